"""Constructive searches and enumeration-backed bounds built on data sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dataset import ConeDatum, CyclicDataSet, DataSetError, format_dataset, genus, is_irreducible, power, validate
from .enumeration import enumerate_all
from .multitwist import PseudoPeriodicDataSet, assemble


def full_order_slots(ds: CyclicDataSet) -> list[int]:
	return [i for i, c in enumerate(ds.cone) if c.m == ds.n]


def _pick_slots(ds: CyclicDataSet, slots: tuple[int, int] | None) -> tuple[int, int]:
	full = full_order_slots(ds)
	if slots is None:
		if len(full) < 2:
			raise DataSetError(f"{format_dataset(ds)} has fewer than two cone points of order {ds.n}")
		return full[0], full[1]
	a, b = slots
	if a == b or a not in full or b not in full:
		raise DataSetError(f"slots {slots} are not two distinct cone points of order {ds.n}")
	return a, b


# --- Z x Z_m ---------------------------------------------------------------------

@dataclass(frozen=True)
class ZmHit:
	m: int
	k_prime: int
	k: int

	def to_json(self) -> dict:
		return {"m": self.m, "k_prime": self.k_prime, "k": self.k}


def abelian_zm_conditions(n: int, a: int, b: int) -> list[ZmHit]:
	"""Divisors m of n (coprime to n/m, m != n) meeting the three congruences."""
	kp = (pow(a, -1, n) + pow(b, -1, n)) % n
	if kp == 0:
		return []
	hits = []
	for m in range(2, n):
		if n % m or math.gcd(m, n // m) != 1:
			continue
		rest = n // m
		if (a + b) % m == 0 and (a + b - kp) % rest == 0:
			hits.append(ZmHit(m, kp, (a + b) % rest))
	return hits


def search_abelian_zm(ds: CyclicDataSet, slots: tuple[int, int] | None = None) -> list[ZmHit]:
	genus(ds)
	i, j = _pick_slots(ds, slots)
	return abelian_zm_conditions(ds.n, ds.cone[i].d, ds.cone[j].d)


# --- dihedral-type extensions ------------------------------------------------------

@dataclass
class DihedralOption:
	slots: tuple[int, int]
	a: int
	b: int
	group: str
	ambient_genus: int
	construction: CyclicDataSet | PseudoPeriodicDataSet

	def to_json(self) -> dict:
		return {"slots": list(self.slots), "a": self.a, "b": self.b, "group": self.group,
			"ambient_genus": self.ambient_genus, "construction": str(self.construction)}


@dataclass
class DihedralResult:
	genus: int
	options: list[DihedralOption] = field(default_factory=list)

	@property
	def chosen(self) -> DihedralOption | None:
		# an equal pair is reported first when one exists
		return self.options[0] if self.options else None

	@property
	def classification(self) -> str:
		return self.chosen.group if self.options else "none"

	def to_json(self) -> dict:
		return {"genus": self.genus, "classification": self.classification,
			"options": [o.to_json() for o in self.options]}


def _glue_periodic(ds: CyclicDataSet, i: int, j: int) -> CyclicDataSet:
	"""Join ds to its inverse along the two chosen order-n orbits without twisting."""
	inv = power(ds, -1)
	keep = [c for t, c in enumerate(ds.cone) if t not in (i, j)]
	keep += [c for t, c in enumerate(inv.cone) if t not in (i, j)]
	return CyclicDataSet(ds.n, 2 * ds.g0 + 1, 0, tuple(keep)).canonical()


def search_dihedral_extension(ds: CyclicDataSet, slots: tuple[int, int] | None = None) -> DihedralResult:
	"""Extensions of <F> by an involution inverting it, on a surface of genus 2g+1.

	Two order-n cone points (a,n), (b,n) of F are used.  With a = b the copies
	of F and F^-1 glue periodically; with a != b they glue into a root of a
	multitwist.  Both constructions are carried out and returned.
	"""
	g = genus(ds)
	if not 3 <= ds.n <= 4 * g:
		raise DataSetError(f"degree {ds.n} is outside [3, {4 * g}]")
	full = full_order_slots(ds)
	if slots is not None:
		_pick_slots(ds, slots)
		pairs = [tuple(slots)]
	else:
		pairs = [(x, y) for t, x in enumerate(full) for y in full[t + 1:]]
	out = []
	seen = set()
	for i, j in pairs:
		a, b = ds.cone[i].d, ds.cone[j].d
		key = (a, b)
		if key in seen:
			continue
		seen.add(key)
		if a == b:
			built = _glue_periodic(ds, i, j)
			if genus(built) != 2 * g + 1:
				raise AssertionError("periodic gluing produced the wrong genus")
			group = f"Z_{ds.n}⋊_{{-1}}Z"
		else:
			inv = power(ds, -1)
			built = assemble([ds, inv], [((0, i), (1, j)), ((0, j), (1, i))])
			group = "Z⋊_{-1}Z_2"
		out.append(DihedralOption((i, j), a, b, group, 2 * g + 1, built))
	out.sort(key=lambda o: (o.a != o.b, o.slots))
	return DihedralResult(g, out)


# --- bounds --------------------------------------------------------------------------

@dataclass
class SubClaim:
	name: str
	passed: bool
	detail: str
	counterexamples: list[str] = field(default_factory=list)

	def to_json(self) -> dict:
		return {"claim": self.name, "passed": self.passed, "detail": self.detail,
			"counterexamples": self.counterexamples}


@dataclass
class BoundsReport:
	genus: int
	claims: list[SubClaim]
	assumptions: list[str] = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return all(c.passed for c in self.claims)

	def to_json(self) -> dict:
		return {"genus": self.genus, "passed": self.passed, "claims": [c.to_json() for c in self.claims],
			"assumptions": self.assumptions}


def verify_bounds(g: int, workers: int | None = None) -> BoundsReport:
	"""Check the order bounds for reducible and irreducible classes by enumeration."""
	everything = enumerate_all(g, workers)
	claims = []

	bad = [str(ds) for ds in everything if ds.n == 4 * g + 1]
	claims.append(SubClaim("a", not bad, f"no data set of degree {4 * g + 1}", bad))

	top = [ds for ds in everything if ds.n == 4 * g + 2]
	bad = [str(ds) for ds in top if not is_irreducible(ds)]
	claims.append(SubClaim("b", not bad, f"all {len(top)} data sets of degree {4 * g + 2} are irreducible", bad))

	reducible = [ds for ds in everything if not is_irreducible(ds)]
	top_deg = max(ds.n for ds in reducible)
	at_top = [ds for ds in reducible if ds.n == top_deg]
	sigs = sorted({str(ds.signature()) for ds in at_top})
	expected_sig = f"(0;2,2,{g + 1},{g + 1})"
	if g % 2 == 0:
		ok = top_deg == 2 * g + 2 and sigs == [expected_sig]
		detail = f"reducible maximum degree {top_deg}, signatures {sigs}; expected {2 * g + 2} with {expected_sig}"
	else:
		ok = top_deg <= 2 * g
		detail = f"reducible maximum degree {top_deg}; expected at most {2 * g}"
	gap = [str(ds) for ds in reducible if 2 * g < ds.n < 2 * g + 2]
	ok = ok and not gap
	claims.append(SubClaim("c", ok, detail, [str(ds) for ds in at_top if not ok] + gap))
	# not visible in a data set, so only recorded
	assumed = []
	if g % 2 == 0:
		assumed.append(f"degree-{2 * g + 2} reducible classes have a unique maximal reduction system "
			"made of one separating curve")
	return BoundsReport(g, claims, assumed)


# --- centralizers ----------------------------------------------------------------------

def involution_candidates(g: int) -> list[CyclicDataSet]:
	out = [CyclicDataSet(2, 0, 0, tuple(ConeDatum(1, 2) for _ in range(2 * g + 2)))]
	if g % 2 == 0:
		out.append(CyclicDataSet(2, g // 2, 0, (ConeDatum(1, 2), ConeDatum(1, 2))))
	else:
		out.append(CyclicDataSet(2, (g + 1) // 2, 1))
	return out


@dataclass
class CentralizerResult:
	kind: str                                   # "cyclic" or "bounded"
	genus: int
	candidates: list[CyclicDataSet] = field(default_factory=list)
	no_order3_symmetry: bool = True
	within_bound: bool = True

	def to_json(self) -> dict:
		return {"kind": self.kind, "genus": self.genus,
			"candidates": [format_dataset(c) for c in self.candidates],
			"no_order3_symmetry": self.no_order3_symmetry, "degree_at_most_2g_plus_2": self.within_bound}


def centralizer_class(ds: CyclicDataSet) -> CentralizerResult:
	"""Centralizer of an irreducible periodic class.

	It is <F> unless two cone pairs coincide and n <= 2g+2; in that case the
	centralizer is generated by F and an involution whose data set is one of
	the returned candidates.
	"""
	if not is_irreducible(ds):
		raise DataSetError(f"{format_dataset(ds)} is reducible")
	g = genus(ds)
	pairs = [(c.d, c.m) for c in ds.cone]
	distinct = len(set(pairs)) == 3
	no3 = len(set(pairs)) > 1 or (3 * pairs[0][0]) % ds.n != 0
	small = ds.n <= 2 * g + 2
	if distinct or not small:
		return CentralizerResult("cyclic", g, [], no3, small)
	return CentralizerResult("bounded", g, involution_candidates(g), no3, small)


def candidate_involutions_valid(g: int) -> bool:
	return all(validate(c).ok and genus(c) == g for c in involution_candidates(g))
