"""Roots of multitwists assembled from periodic components.

Components are data sets; a pairing glues an orbit of one component to an
orbit of the same size on another (or the same) component, and the twist
factor of the pairing fixes the exponent of the multitwist along the
resulting curve.  Orbits are named by cone slot or by the string
``"principal"`` for a free orbit.

Only orbit size 1 (for both curves and components) carries full meaning.
Larger sizes are kept and their arithmetic is checked, but results are
flagged ``structural_only``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ._text import Reader
from .dataset import (ConeDatum, CyclicDataSet, DataSetError, format_dataset, genus, local_angle, parse,
	read_dataset, validate)

PRINCIPAL = "principal"
Slot = Union[int, str]


class AssemblyError(ValueError):
	def __init__(self, message: str, pairing: int | None = None):
		super().__init__(message if pairing is None else f"pairing {pairing}: {message}")
		self.pairing = pairing


def symmetric_residue(x: int, n: int) -> int:
	"""Representative of x mod n in (-n/2, n/2]."""
	r = x % n
	return r - n if 2 * r > n else r


def _angle(c: ConeDatum | None) -> Fraction:
	return Fraction(0) if c is None else local_angle(c)


def twist_factor(a: ConeDatum | None, n_a: int, b: ConeDatum | None, n_b: int) -> int:
	"""Twist factor of gluing orbit ``a`` (degree n_a) to orbit ``b`` (degree n_b).

	``None`` stands for a principal orbit.  The value k satisfies
	angle(a) + angle(b) = k/n mod 1 with n = lcm(n_a, n_b), reduced into
	(-n/2, n/2].
	"""
	n = math.lcm(n_a, n_b)
	total = (_angle(a) + _angle(b)) * n
	assert total.denominator == 1
	return symmetric_residue(int(total), n)


def orbit_size(c: ConeDatum | None, degree: int) -> int:
	return degree if c is None else degree // c.m


def compatible(a: ConeDatum | None, n_a: int, b: ConeDatum | None, n_b: int) -> bool:
	return orbit_size(a, n_a) == orbit_size(b, n_b)


@dataclass(frozen=True)
class OrbitRef:
	component: int
	slot: Slot

	def to_json(self) -> list:
		return [self.component, self.slot]


@dataclass(frozen=True)
class Component:
	dataset: CyclicDataSet
	orbit_size: int = 1


@dataclass(frozen=True)
class TwistPairing:
	end_a: OrbitRef
	end_b: OrbitRef
	orbit_size: int
	twist_factor: int
	modulus: int
	q: int

	def to_json(self) -> list:
		return [self.orbit_size, self.q, self.twist_factor, self.end_a.to_json(), self.end_b.to_json()]


@dataclass(frozen=True, eq=False)
class PseudoPeriodicDataSet:
	degree: int
	components: tuple[Component, ...]
	pairings: tuple[TwistPairing, ...]

	@property
	def structural_only(self) -> bool:
		return any(c.orbit_size != 1 for c in self.components) or any(p.orbit_size != 1 for p in self.pairings)

	def genus(self) -> int:
		return total_genus(self)

	def multitwist(self) -> list[tuple[int, int]]:
		return multitwist_of(self)

	def to_json(self) -> dict:
		return {
			"degree": self.degree,
			"components": [{"dataset": c.dataset.to_json(), "orbit_size": c.orbit_size} for c in self.components],
			"pairings": [p.to_json() for p in self.pairings],
		}

	@classmethod
	def from_json(cls, obj: dict) -> PseudoPeriodicDataSet:
		"""Rebuild and re-verify from the JSON form (q and k_t must agree)."""
		comps = [_component_from_json(c) for c in obj["components"]]
		ends, stated = _pairings_from_json(obj["pairings"])
		pds = assemble(comps, ends, obj.get("degree"))
		for i, (p, st) in enumerate(zip(pds.pairings, stated)):
			if st is not None and st != (p.orbit_size, p.q, p.twist_factor):
				raise AssemblyError(f"stated (size, q, k_t) = {st} but computed "
					f"{(p.orbit_size, p.q, p.twist_factor)}", i)
		return pds

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, PseudoPeriodicDataSet):
			return NotImplemented
		return self.to_json() == other.to_json()

	def __hash__(self) -> int:
		return hash(str(self.to_json()))

	def __str__(self) -> str:
		return format_pds(self)

	@classmethod
	def parse(cls, text: str) -> PseudoPeriodicDataSet:
		return parse_pds(text)


def _component_from_json(obj) -> Component:
	if isinstance(obj, str):
		return Component(parse(obj))
	ds = obj["dataset"]
	if isinstance(ds, str):
		ds = parse(ds)
	else:
		ds = CyclicDataSet.from_json(ds)
	return Component(ds, int(obj.get("orbit_size", 1)))


def _ref(x) -> OrbitRef:
	comp, slot = x
	return OrbitRef(int(comp), slot if slot == PRINCIPAL else int(slot))


def _pairings_from_json(items) -> tuple[list[tuple[OrbitRef, OrbitRef]], list]:
	ends, stated = [], []
	for item in items:
		if isinstance(item, dict):
			ends.append((_ref(item["a"]), _ref(item["b"])))
			stated.append(None)
		elif len(item) == 2:
			ends.append((_ref(item[0]), _ref(item[1])))
			stated.append(None)
		elif len(item) == 5:
			ends.append((_ref(item[3]), _ref(item[4])))
			stated.append(None if None in item[:3] else tuple(int(v) for v in item[:3]))
		else:
			raise ValueError(f"malformed pairing entry {item!r}")
	return ends, stated


def _resolve(comps: Sequence[Component], ref: OrbitRef, idx: int) -> tuple[ConeDatum | None, int]:
	if not 0 <= ref.component < len(comps):
		raise AssemblyError(f"component {ref.component} does not exist", idx)
	ds = comps[ref.component].dataset
	if ref.slot == PRINCIPAL:
		return None, ds.n
	if not isinstance(ref.slot, int) or not 0 <= ref.slot < len(ds.cone):
		raise AssemblyError(f"slot {ref.slot!r} of component {ref.component} does not exist", idx)
	return ds.cone[ref.slot], ds.n


def minimal_degree(comps: Sequence[Component], factors: Sequence[tuple[int, int]]) -> int:
	"""Least N divisible by every component degree with N*k/n integral for each (k, n)."""
	parts = [c.dataset.n for c in comps] + [n // math.gcd(n, k) for k, n in factors]
	return math.lcm(*parts)


def assemble(components, pairings, degree: int | None = None) -> PseudoPeriodicDataSet:
	"""Glue components along pairings and compute the root's degree and exponents.

	``components`` holds Component objects, data sets, or (data set, size)
	pairs.  ``pairings`` holds (end_a, end_b) with ends given as OrbitRef or
	(component, slot).  When ``degree`` is given it must be the minimal one.
	"""
	comps: list[Component] = []
	for c in components:
		if isinstance(c, Component):
			comps.append(c)
		elif isinstance(c, CyclicDataSet):
			comps.append(Component(c))
		else:
			comps.append(Component(c[0], int(c[1])))
	if not comps:
		raise AssemblyError("no components")
	for i, c in enumerate(comps):
		rep = validate(c.dataset, min_genus=0)
		if not rep.ok:
			raise DataSetError(f"component {i} {format_dataset(c.dataset)}: " + "; ".join(rep.describe()))
		if c.orbit_size < 1:
			raise AssemblyError(f"component {i} has orbit size {c.orbit_size}")

	used: set[tuple[int, int]] = set()
	raw = []
	for idx, (a, b) in enumerate(pairings):
		a = a if isinstance(a, OrbitRef) else _ref(a)
		b = b if isinstance(b, OrbitRef) else _ref(b)
		ca, na = _resolve(comps, a, idx)
		cb, nb = _resolve(comps, b, idx)
		for ref in (a, b):
			if ref.slot != PRINCIPAL:
				key = (ref.component, ref.slot)
				if key in used:
					raise AssemblyError(f"slot {ref.slot} of component {ref.component} is glued twice", idx)
				used.add(key)
		sa, sb = orbit_size(ca, na), orbit_size(cb, nb)
		if sa != sb:
			raise AssemblyError(f"orbit sizes differ ({sa} vs {sb}); the orbits are not compatible", idx)
		k = twist_factor(ca, na, cb, nb)
		if k == 0:
			raise AssemblyError("twist factor is 0, so the gluing does not produce a twist", idx)
		raw.append((a, b, sa, k, math.lcm(na, nb)))

	least = minimal_degree(comps, [(k, n) for *_, k, n in raw])
	if degree is None:
		degree = least
	else:
		degree = int(degree)
		bad = [c.dataset.n for c in comps if degree % c.dataset.n]
		if bad:
			raise AssemblyError(f"degree {degree} is not a multiple of component degrees {bad}")
		for idx, (*_, k, n) in enumerate(raw):
			if degree * k % n:
				raise AssemblyError(f"exponent {degree}*{k}/{n} is not an integer", idx)
		if degree != least:
			raise AssemblyError(f"degree {degree} is not minimal (minimal is {least})")

	out = tuple(TwistPairing(a, b, s, k, n, degree * k // n) for a, b, s, k, n in raw)
	pds = PseudoPeriodicDataSet(degree, tuple(comps), out)
	if not _connected(len(comps), out):
		raise AssemblyError("the gluing graph is disconnected")
	g = total_genus(pds)
	if g < 2:
		raise AssemblyError(f"total genus {g} is below 2")
	return pds


def _connected(count: int, pairings: Sequence[TwistPairing]) -> bool:
	parent = list(range(count))

	def find(x: int) -> int:
		while parent[x] != x:
			parent[x] = parent[parent[x]]
			x = parent[x]
		return x

	for p in pairings:
		parent[find(p.end_a.component)] = find(p.end_b.component)
	return len({find(i) for i in range(count)}) == 1


def total_genus(pds: PseudoPeriodicDataSet) -> int:
	"""Sum of component genera plus the first Betti number of the gluing graph."""
	vertices = sum(c.orbit_size for c in pds.components)
	edges = sum(p.orbit_size for p in pds.pairings)
	body = sum(c.orbit_size * genus(c.dataset, min_genus=0) for c in pds.components)
	return body + edges - vertices + 1


def multitwist_of(pds: PseudoPeriodicDataSet) -> list[tuple[int, int]]:
	"""(pairing index, exponent) for the multitwist F^N."""
	return [(i, p.q) for i, p in enumerate(pds.pairings)]


# --- bracket notation ----------------------------------------------------------
# [[N;(D1,s1),...;((size,q,k;a,b)),...;-]] with components numbered from 1 and
# glued slots tagged _j by the pairing number j (also from 1).

def format_pds(pds: PseudoPeriodicDataSet) -> str:
	marks: list[dict[int, int]] = [{} for _ in pds.components]
	principal: list[list[int]] = [[] for _ in pds.components]
	for j, p in enumerate(pds.pairings, start=1):
		for ref in (p.end_a, p.end_b):
			if ref.slot == PRINCIPAL:
				principal[ref.component].append(j)
			else:
				marks[ref.component][ref.slot] = j
	comps = ",".join(f"({format_dataset(c.dataset, marks[i], principal[i])},{c.orbit_size})"
		for i, c in enumerate(pds.components))
	pairs = ",".join(f"(({p.orbit_size},{p.q},{p.twist_factor};{p.end_a.component + 1},{p.end_b.component + 1}))"
		for p in pds.pairings)
	return f"[[{pds.degree};{comps};{pairs or '-'};-]]"


def parse_pds(text: str) -> PseudoPeriodicDataSet:
	rd = Reader(text)
	rd.expect("[[")
	degree = rd.integer()
	rd.expect(";")
	comps: list[Component] = []
	marks: list[list] = []
	while True:
		rd.expect("(")
		mk: list = []
		ds = read_dataset(rd, mk)
		rd.expect(",")
		size = rd.integer()
		rd.expect(")")
		comps.append(Component(ds, size))
		marks.append(mk)
		if not rd.accept(","):
			break
	rd.expect(";")
	stated = []
	if not rd.accept("-"):
		while True:
			rd.expect("((")
			size = rd.integer()
			rd.expect(",")
			q = rd.integer()
			rd.expect(",")
			k = rd.integer()
			rd.expect(";")
			ca = rd.integer() - 1
			rd.expect(",")
			cb = rd.integer() - 1
			rd.expect("))")
			stated.append((size, q, k, ca, cb))
			if not rd.accept(","):
				break
	rd.expect(";")
	rd.expect("-")
	rd.expect("]]")
	rd.end()

	ends = []
	for j, (size, q, k, ca, cb) in enumerate(stated, start=1):
		found = [(ci, slot) for ci, mk in enumerate(marks) for slot, mark in mk if mark == j]
		if len(found) != 2:
			raise rd.fail(f"pairing {j} needs exactly two tagged orbits, found {len(found)}")
		if {found[0][0], found[1][0]} != {ca, cb}:
			raise rd.fail(f"pairing {j} names components {ca + 1},{cb + 1} but tags sit elsewhere")
		if found[0][0] != ca:
			found.reverse()
		ends.append(tuple(OrbitRef(ci, PRINCIPAL if slot is None else slot) for ci, slot in found))
	pds = assemble(comps, ends, degree)
	for j, (p, st) in enumerate(zip(pds.pairings, stated)):
		if (p.orbit_size, p.q, p.twist_factor) != st[:3]:
			raise AssemblyError(f"stated (size, q, k_t) = {st[:3]} disagrees with computed "
				f"{(p.orbit_size, p.q, p.twist_factor)}", j)
	return pds
