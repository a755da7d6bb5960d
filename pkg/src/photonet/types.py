"""Wire types and tensor-product types."""

from __future__ import annotations

from enum import Enum


class WireType(Enum):
    BIT = "bit"
    MODE = "mode"
    QUBIT = "qubit"
    QMODE = "qmode"

    @property
    def classical(self) -> bool:
        return self in (WireType.BIT, WireType.MODE)

    @property
    def quantum(self) -> bool:
        return not self.classical

    @property
    def fixed_dim(self):
        """2 for bit/qubit; ``None`` when the dimension comes from truncation."""
        return 2 if self in (WireType.BIT, WireType.QUBIT) else None

    @property
    def photonic(self) -> bool:
        return self in (WireType.MODE, WireType.QMODE)

    def measured(self) -> WireType:
        return {WireType.QUBIT: WireType.BIT, WireType.QMODE: WireType.MODE}.get(self, self)

    def encoded(self) -> WireType:
        return {WireType.BIT: WireType.QUBIT, WireType.MODE: WireType.QMODE}.get(self, self)

    def __repr__(self):
        return self.value


class Ty(tuple):
    """An ordered list of wire types; ``@`` concatenates, ``**`` repeats.

    >>> qmode @ qmode == qmode ** 2
    True
    """

    def __new__(cls, *factors):
        if len(factors) == 1 and not isinstance(factors[0], (WireType, str)):
            factors = tuple(factors[0])
        flat = []
        for f in factors:
            flat.extend(f if isinstance(f, Ty) else (f,))
        return super().__new__(cls, (_as_wire(f) for f in flat))

    def __matmul__(self, other):
        if not isinstance(other, Ty):
            return NotImplemented
        return Ty(tuple(self) + tuple(other))

    def __pow__(self, n: int):
        return Ty(tuple(self) * n)

    def __add__(self, other):
        return self @ Ty(other)

    def __getitem__(self, key):
        out = super().__getitem__(key)
        return Ty(out) if isinstance(key, slice) else out

    def __repr__(self):
        if not self:
            return "Ty()"
        return " @ ".join(f.value for f in self)

    @property
    def classical(self) -> bool:
        return all(f.classical for f in self)

    @property
    def quantum(self) -> bool:
        return all(f.quantum for f in self)

    def measured(self) -> Ty:
        return Ty(f.measured() for f in self)

    def encoded(self) -> Ty:
        return Ty(f.encoded() for f in self)


def _as_wire(f) -> WireType:
    if isinstance(f, WireType):
        return f
    if isinstance(f, str):
        return WireType(f)
    raise TypeError(f"not a wire type: {f!r}")


def as_ty(x) -> Ty:
    if isinstance(x, Ty):
        return x
    if isinstance(x, WireType):
        return Ty(x)
    return Ty(x)


bit = Ty(WireType.BIT)
mode = Ty(WireType.MODE)
qubit = Ty(WireType.QUBIT)
qmode = Ty(WireType.QMODE)
