"""Flattened ontologies: a signature plus an ordered, deduplicated axiom list."""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import (
    AtomicAxiom,
    Declaration,
    EntityKind,
    normalize_axiom,
    referenced_kinds,
)
from .diagnostics import GodpError, Span
from .names import THING_BASE, StructuredName


@dataclass(frozen=True)
class SigEntry:
    kind: EntityKind
    declared: bool


class Signature:
    """Ordered map from name to entity kind, tracking declared vs referenced."""

    def __init__(self) -> None:
        self._entries: dict[StructuredName, SigEntry] = {}

    def __contains__(self, n: StructuredName) -> bool:
        return n in self._entries

    def __iter__(self):
        return iter(self._entries.items())

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, n: StructuredName) -> SigEntry | None:
        return self._entries.get(n)

    def kind_of(self, n: StructuredName) -> EntityKind | None:
        entry = self._entries.get(n)
        return entry.kind if entry else None

    def add(self, n: StructuredName, kind: EntityKind, declared: bool, span: Span | None = None) -> None:
        if n.base == THING_BASE:
            return
        existing = self._entries.get(n)
        if existing is None:
            self._entries[n] = SigEntry(kind, declared)
            return
        if existing.kind is not kind:
            raise GodpError(
                "ConflictingKind",
                f"{n} is used both as {existing.kind} and as {kind}",
                span,
            )
        if declared and not existing.declared:
            self._entries[n] = SigEntry(kind, True)

    def merge(self, other: "Signature", span: Span | None = None) -> None:
        for n, entry in other:
            self.add(n, entry.kind, entry.declared, span)

    def copy(self) -> "Signature":
        out = Signature()
        out._entries = dict(self._entries)
        return out

    def undeclared(self) -> list[tuple[StructuredName, EntityKind]]:
        return [(n, e.kind) for n, e in self._entries.items() if not e.declared]


@dataclass
class FlatOntology:
    signature: Signature = field(default_factory=Signature)
    axioms: tuple[AtomicAxiom, ...] = ()

    @staticmethod
    def from_axioms(axioms: list[AtomicAxiom] | tuple[AtomicAxiom, ...], span: Span | None = None) -> "FlatOntology":
        """Build with first-occurrence dedup and position-inferred signature."""
        sig = Signature()
        kept: list[AtomicAxiom] = []
        seen: set[AtomicAxiom] = set()
        for ax in axioms:
            key = normalize_axiom(ax)
            if key in seen:
                continue
            seen.add(key)
            kept.append(ax)
            for n, kind in referenced_kinds(ax):
                sig.add(n, kind, declared=isinstance(ax, Declaration), span=span)
        return FlatOntology(sig, tuple(kept))

    def normalized_set(self) -> frozenset[AtomicAxiom]:
        return frozenset(normalize_axiom(ax) for ax in self.axioms)


def combine(left: FlatOntology, right: FlatOntology, span: Span | None = None) -> FlatOntology:
    """Union of signatures and axioms, keeping the first occurrence of a
    normalization-equal axiom; raises ConflictingKind on a kind clash."""
    sig = left.signature.copy()
    sig.merge(right.signature, span)
    seen = {normalize_axiom(ax) for ax in left.axioms}
    kept = list(left.axioms)
    for ax in right.axioms:
        key = normalize_axiom(ax)
        if key in seen:
            continue
        seen.add(key)
        kept.append(ax)
    return FlatOntology(sig, tuple(kept))
