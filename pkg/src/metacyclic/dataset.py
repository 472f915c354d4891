"""Cyclic data sets.

A data set ``(n, g0, r; (d1,m1), ..., (dk,mk))`` encodes the conjugacy class of
a periodic mapping class of order ``n``: the quotient orbifold has genus ``g0``,
cone point ``i`` has order ``m_i`` and rotation datum ``d_i``, and ``r`` is only
nonzero for free actions.  Slot order is kept (pairings refer to slots), while
equality and hashing treat the cone data as a multiset.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._text import ParseError, Reader

__all__ = [
	"ConeDatum", "CyclicDataSet", "Signature", "ValidationReport", "DataSetError",
	"ParseError", "local_angle", "validate", "genus", "genus_value", "is_irreducible",
	"power", "parse", "format_dataset", "CONDITIONS",
]

CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi")


class DataSetError(ValueError):
	"""An operation that needs a valid data set received an invalid one."""


@dataclass(frozen=True)
class ConeDatum:
	d: int
	m: int

	def __str__(self) -> str:
		return f"({self.d},{self.m})"

	def sort_key(self) -> tuple[int, int]:
		return (self.m, self.d)


def _lcm(values: Iterable[int]) -> int:
	return math.lcm(*values) if values else 1


@dataclass(frozen=True)
class Signature:
	g0: int
	orders: tuple[int, ...]

	def __str__(self) -> str:
		return "(" + ";".join([str(self.g0)] + ([",".join(map(str, self.orders))] if self.orders else [])) + ")"


@dataclass(frozen=True, eq=False)
class CyclicDataSet:
	n: int
	g0: int
	r: int = 0
	cone: tuple[ConeDatum, ...] = ()

	def __post_init__(self) -> None:
		cone = tuple(c if isinstance(c, ConeDatum) else ConeDatum(*c) for c in self.cone)
		object.__setattr__(self, "cone", cone)

	def key(self) -> tuple:
		return (self.n, self.g0, self.r, tuple(sorted(c.sort_key() for c in self.cone)))

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, CyclicDataSet):
			return NotImplemented
		return self.key() == other.key()

	def __hash__(self) -> int:
		return hash(self.key())

	def __lt__(self, other: CyclicDataSet) -> bool:
		return self.key() < other.key()

	def __str__(self) -> str:
		return format_dataset(self)

	def __repr__(self) -> str:
		return f"CyclicDataSet({format_dataset(self)!r})"

	@property
	def orders(self) -> tuple[int, ...]:
		return tuple(c.m for c in self.cone)

	def signature(self) -> Signature:
		return Signature(self.g0, tuple(sorted(self.orders)))

	def canonical(self) -> CyclicDataSet:
		return CyclicDataSet(self.n, self.g0, self.r, tuple(sorted(self.cone, key=ConeDatum.sort_key)))

	def to_json(self) -> dict:
		return {"n": self.n, "g0": self.g0, "r": self.r, "cone": [[c.d, c.m] for c in self.cone]}

	@classmethod
	def from_json(cls, obj: dict) -> CyclicDataSet:
		try:
			return cls(int(obj["n"]), int(obj["g0"]), int(obj.get("r", 0)),
				tuple(ConeDatum(int(d), int(m)) for d, m in obj.get("cone", [])))
		except (KeyError, TypeError, ValueError) as exc:
			raise ValueError(f"malformed data set JSON: {obj!r}") from exc

	@classmethod
	def parse(cls, text: str) -> CyclicDataSet:
		return parse(text)


def local_angle(c: ConeDatum) -> Fraction:
	"""Rotation angle (as a fraction of a full turn) at a cone point: d^-1 mod m over m."""
	return Fraction(pow(c.d, -1, c.m), c.m)


# --- text form ---------------------------------------------------------------

def read_dataset(rd: Reader, marks: list | None = None) -> CyclicDataSet:
	"""Read one literal from ``rd``.

	When ``marks`` is a list, cone entries may carry a suffix ``_j`` and the
	placeholder ``(0,1)_j`` stands for a principal orbit.  Each mark is appended
	as ``(slot_or_None, j)``.
	"""
	rd.expect("(")
	n = rd.integer()
	rd.expect(",")
	g0 = rd.integer()
	r = 0
	if rd.accept(","):
		r = rd.integer()
	rd.expect(";")
	cone: list[ConeDatum] = []
	if not rd.accept("-"):
		while True:
			where = rd.pos
			rd.expect("(")
			d = rd.integer()
			rd.expect(",")
			m = rd.integer()
			rd.expect(")")
			mark = None
			if marks is not None and rd.accept("_"):
				mark = rd.integer()
			if (d, m) == (0, 1) and marks is not None:
				if mark is None:
					rd.pos = where
					raise rd.fail("principal placeholder needs a mark")
				marks.append((None, mark))
			else:
				if mark is not None:
					marks.append((len(cone), mark))
				cone.append(ConeDatum(d, m))
			if not rd.accept(","):
				break
	rd.expect(")")
	return CyclicDataSet(n, g0, r, tuple(cone))


def parse(text: str) -> CyclicDataSet:
	"""Parse ``(n,g0;(d,m),...)`` or ``(n,g0,r;-)``; whitespace is ignored."""
	rd = Reader(text)
	ds = read_dataset(rd)
	rd.end()
	return ds


def format_dataset(ds: CyclicDataSet, marks: dict | None = None, principal: Sequence[int] = ()) -> str:
	head = f"{ds.n},{ds.g0}" + (f",{ds.r}" if ds.r else "")
	parts = []
	for i, c in enumerate(ds.cone):
		suffix = f"_{marks[i]}" if marks and i in marks else ""
		parts.append(f"{c}{suffix}")
	parts.extend(f"(0,1)_{j}" for j in principal)
	return f"({head};{','.join(parts) if parts else '-'})"


# --- validity ----------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
	structural: tuple[str, ...]
	violations: tuple[int, ...]
	genus: Fraction | None

	@property
	def ok(self) -> bool:
		return not self.structural and not self.violations

	def describe(self) -> list[str]:
		out = list(self.structural)
		out += [f"condition ({CONDITIONS[i - 1]}) violated" for i in self.violations]
		return out


def genus_value(ds: CyclicDataSet) -> Fraction:
	"""Genus predicted by Riemann-Hurwitz; may be non-integral for bad input."""
	chi = 2 * ds.g0 - 2 + sum(1 - Fraction(1, c.m) for c in ds.cone)
	return 1 + Fraction(ds.n) * chi / 2


def _structural(ds: CyclicDataSet) -> list[str]:
	errs = []
	if ds.n < 2:
		errs.append(f"degree n={ds.n} is below 2")
	if ds.g0 < 0:
		errs.append(f"quotient genus g0={ds.g0} is negative")
	if not 0 <= ds.r < max(ds.n, 1):
		errs.append(f"r={ds.r} is outside [0, n)")
	for i, c in enumerate(ds.cone):
		if c.m < 2:
			errs.append(f"slot {i}: order {c.m} is below 2")
		elif not 1 <= c.d < c.m:
			errs.append(f"slot {i}: d={c.d} is outside [1, {c.m})")
	return errs


def validate(ds: CyclicDataSet, min_genus: int = 2) -> ValidationReport:
	"""Check every defining condition and report all violations at once.

	Malformed slots are reported as structural errors and suppress the
	condition checks.  ``min_genus`` lowers the genus floor of condition (vi)
	for components of pseudo-periodic assemblies.
	"""
	structural = _structural(ds)
	if structural:
		return ValidationReport(tuple(structural), (), None)
	bad = []
	k = len(ds.cone)
	if (ds.r > 0) == (k > 0) or (ds.r > 0 and math.gcd(ds.r, ds.n) != 1):
		bad.append(1)
	if any(ds.n % c.m or math.gcd(c.d, c.m) != 1 for c in ds.cone):
		bad.append(2)
	full = _lcm(ds.orders)
	if any(_lcm(ds.orders[:i] + ds.orders[i + 1:]) != full for i in range(k)):
		bad.append(3)
	if ds.g0 == 0 and full != ds.n:
		bad.append(4)
	if sum(Fraction(c.d, c.m) for c in ds.cone).denominator != 1:
		bad.append(5)
	g = genus_value(ds)
	if g.denominator != 1 or g < min_genus:
		bad.append(6)
	return ValidationReport((), tuple(bad), g)


def _require(ds: CyclicDataSet, min_genus: int = 2) -> ValidationReport:
	rep = validate(ds, min_genus)
	if not rep.ok:
		raise DataSetError(f"{format_dataset(ds)} is not a valid data set: " + "; ".join(rep.describe()))
	return rep


def genus(ds: CyclicDataSet, min_genus: int = 2) -> int:
	return int(_require(ds, min_genus).genus)


def is_irreducible(ds: CyclicDataSet) -> bool:
	"""Irreducible classes are exactly those with quotient a sphere with three cone points."""
	_require(ds)
	return ds.g0 == 0 and len(ds.cone) == 3


def power(ds: CyclicDataSet, k: int) -> CyclicDataSet:
	"""Data set of F^k for a unit k mod n; each local angle is multiplied by k."""
	if math.gcd(k, ds.n) != 1:
		raise DataSetError(f"exponent {k} is not a unit mod {ds.n}")
	inv = pow(k, -1, ds.n)
	cone = tuple(ConeDatum(inv * c.d % c.m, c.m) for c in ds.cone)
	return CyclicDataSet(ds.n, ds.g0, inv * ds.r % ds.n if ds.r else 0, cone)


def cone_multiset(ds: CyclicDataSet) -> Counter:
	return Counter((c.d, c.m) for c in ds.cone)
