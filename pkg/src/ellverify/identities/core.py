"""Identity records and the helpers the formula modules share."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Callable, Mapping, Optional, Sequence

from gmpy2 import mpc

from ..numerics import EllVerifyError
from ..series import SeriesForm
from ..theta import Kernel

# (params, n, kernel, sequence) -> value
SideFn = Callable[[SimpleNamespace, int, Kernel, Optional[Callable[[int], mpc]]], mpc]

KINDS = ("summation", "expansion", "transformation", "special-p0")


class UnknownIdentity(EllVerifyError, KeyError):
    pass


class ArityError(EllVerifyError, TypeError):
    """A sequence was supplied to (or withheld from) the wrong kind of identity."""


@dataclass(frozen=True)
class Sides:
    lhs: SideFn
    rhs: SideFn
    # the primary (left-hand) sum as a declarative form, for the linter
    series: Optional[Callable[[SimpleNamespace, int], SeriesForm]] = None
    note: str = ""


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    title: str
    kind: str
    label: str
    anchor: str
    slots: tuple
    variants: Mapping[str, Sides]
    base_nome_usage: tuple = ()
    elliptic: bool = True
    sequence_slot: bool = False
    # maps sampled slot values to the full parameter set (e.g. b = beta^2)
    derive: Optional[Callable[[dict], dict]] = None
    # the sampled slot that plays the role of the nome, if any
    nome_slot: Optional[str] = "p"
    notes: Sequence[str] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if "literal" not in self.variants:
            raise ValueError(f"{self.id}: every identity needs a literal variant")

    def env(self, params: Mapping[str, mpc]) -> SimpleNamespace:
        values = dict(params)
        missing = [s for s in self.slots if s not in values]
        if missing:
            raise KeyError(f"{self.id}: missing parameter(s) {', '.join(missing)}")
        if self.derive is not None:
            values.update(self.derive(values))
        if not self.elliptic:
            values.setdefault("p", mpc(0))
        return SimpleNamespace(**values)

    def side(self, which: str, variant: str = "literal") -> SideFn:
        sides = self.variants[variant]
        if which == "lhs":
            return sides.lhs
        if which == "rhs":
            return sides.rhs
        raise ValueError(f"side must be 'lhs' or 'rhs', got {which!r}")


def geom(x: mpc, n: int) -> mpc:
    return x**n if n else mpc(1)
