"""Pairs (F, G) of mapping classes with G^-1 F G = F^k, encoded combinatorially.

A configured pair lists the components ("vertices") of the surface cut along
C(F) ∪ C(G), the curves ("edges") with their multitwist exponents, and the
permutations that F and G induce on both.  Each vertex carries the first
return maps of F and of G to it: periodic (a data set), pseudo-Anosov (an
opaque label with a user-supplied power-conjugacy table) or the identity.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .dataset import CyclicDataSet, DataSetError, format_dataset, parse, power, validate
from .multitwist import PRINCIPAL, Component, minimal_degree, orbit_size, twist_factor
from .presentations import PresentationClass, classify_presentation

PERIODIC = "periodic"
PSEUDO_ANOSOV = "pseudo_anosov"
IDENTITY = "identity"

CERTIFIED = "certified"
NECESSARY = "necessary-conditions"


class PairError(ValueError):
	"""The pair cannot be evaluated (bad permutations, missing table entries...)."""


# --- Aut_k -------------------------------------------------------------------

@dataclass(frozen=True)
class AutKWitness:
	k: int
	pairing: tuple[int, ...]   # slot x goes to slot pairing[x]


def autk_exists(ds: CyclicDataSet, k: int) -> AutKWitness | None:
	"""Find a slot permutation x -> y with equal orders and d_x = k d_y (mod m).

	Such a matching is the combinatorial shadow of an orbifold automorphism
	conjugating F to F^k.
	"""
	if math.gcd(k, ds.n) != 1:
		raise DataSetError(f"k={k} is not a unit mod {ds.n}")
	pool: dict[tuple[int, int], list[int]] = defaultdict(list)
	for y, c in enumerate(ds.cone):
		pool[(k * c.d % c.m, c.m)].append(y)
	perm = []
	for c in ds.cone:
		bucket = pool.get((c.d, c.m))
		if not bucket:
			return None
		perm.append(bucket.pop(0))
	return AutKWitness(k % ds.n, tuple(perm))


# --- encoding ------------------------------------------------------------------

@dataclass(frozen=True)
class Part:
	kind: str
	dataset: CyclicDataSet | None = None
	label: str | None = None
	conjugacy: dict = field(default_factory=dict, hash=False)
	root: tuple[str, int] | None = None

	def to_json(self) -> dict:
		out: dict = {"kind": self.kind}
		if self.kind == PERIODIC:
			out["dataset"] = format_dataset(self.dataset)
		if self.kind == PSEUDO_ANOSOV:
			out["id"] = self.label
			out["conjugacy"] = {str(e): sorted(v) for e, v in sorted(self.conjugacy.items())}
			if self.root is not None:
				out["root"] = list(self.root)
		return out

	@classmethod
	def from_json(cls, obj: dict) -> Part:
		kind = obj["kind"]
		if kind == PERIODIC:
			ds = obj["dataset"]
			return cls(PERIODIC, parse(ds) if isinstance(ds, str) else CyclicDataSet.from_json(ds))
		if kind == PSEUDO_ANOSOV:
			table = {int(e): frozenset(v) for e, v in obj.get("conjugacy", {}).items()}
			root = tuple(obj["root"]) if obj.get("root") is not None else None
			return cls(PSEUDO_ANOSOV, label=str(obj["id"]), conjugacy=table,
				root=(str(root[0]), int(root[1])) if root else None)
		if kind == IDENTITY:
			return cls(IDENTITY)
		raise ValueError(f"unknown part kind {kind!r}")


@dataclass(frozen=True)
class Vertex:
	genus: int
	f_part: Part
	g_part: Part


@dataclass(frozen=True)
class Edge:
	ends: tuple[int, int]
	membership: str                      # "F", "G" or "FG"
	q: int | None = None                 # exponent in the multitwist part of F
	q_prime: int | None = None           # exponent in the multitwist part of G
	f_slots: tuple | None = None         # orbits of the two F-parts glued along this curve
	g_slots: tuple | None = None

	@property
	def in_f(self) -> bool:
		return "F" in self.membership

	@property
	def in_g(self) -> bool:
		return "G" in self.membership


@dataclass(frozen=True)
class Perm:
	vertices: tuple[int, ...]
	edges: tuple[int, ...]


@dataclass(frozen=True)
class ConfiguredPair:
	vertices: tuple[Vertex, ...]
	edges: tuple[Edge, ...]
	pi_f: Perm
	pi_g: Perm
	n: int | None           # order of F, None when infinite
	m: int                  # degree of G (its order when periodic)
	k: int
	name: str = ""
	level: int | None = None

	def to_json(self) -> dict:
		def slots(s):
			return None if s is None else list(s)
		return {
			"name": self.name,
			"vertices": [{"genus": v.genus, "f_part": v.f_part.to_json(), "g_part": v.g_part.to_json()}
				for v in self.vertices],
			"edges": [{"ends": list(e.ends), "membership": e.membership, "q": e.q, "q_prime": e.q_prime,
				"f_slots": slots(e.f_slots), "g_slots": slots(e.g_slots)} for e in self.edges],
			"pi_F": {"vertices": list(self.pi_f.vertices), "edges": list(self.pi_f.edges)},
			"pi_G": {"vertices": list(self.pi_g.vertices), "edges": list(self.pi_g.edges)},
			"n": self.n, "m": self.m, "k": self.k, "level": self.level,
		}

	@classmethod
	def from_json(cls, obj: dict) -> ConfiguredPair:
		try:
			verts = tuple(Vertex(int(v["genus"]), Part.from_json(v["f_part"]), Part.from_json(v["g_part"]))
				for v in obj["vertices"])
			edges = []
			for e in obj["edges"]:
				mem = e["membership"]
				if mem not in ("F", "G", "FG"):
					raise ValueError(f"membership must be F, G or FG, got {mem!r}")
				edges.append(Edge(tuple(int(x) for x in e["ends"]), mem, e.get("q"), e.get("q_prime"),
					_slots(e.get("f_slots")), _slots(e.get("g_slots"))))
			pf = Perm(tuple(obj["pi_F"]["vertices"]), tuple(obj["pi_F"]["edges"]))
			pg = Perm(tuple(obj["pi_G"]["vertices"]), tuple(obj["pi_G"]["edges"]))
			return cls(verts, tuple(edges), pf, pg, obj.get("n"), int(obj["m"]), int(obj["k"]),
				obj.get("name", ""), obj.get("level"))
		except (KeyError, TypeError) as exc:
			raise ValueError(f"malformed configured pair: {exc}") from exc


def _slots(s):
	if s is None:
		return None
	return tuple(x if x == PRINCIPAL else int(x) for x in s)


# --- verdicts ------------------------------------------------------------------

@dataclass
class ConditionResult:
	name: str
	passed: bool
	level: str
	details: list[str] = field(default_factory=list)

	def to_json(self) -> dict:
		return {"condition": self.name, "passed": self.passed, "level": self.level, "details": self.details}


@dataclass
class Verdict:
	conditions: list[ConditionResult]
	ambient_genus: int | None = None
	presentation: PresentationClass | None = None
	notes: list[str] = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return all(c.passed for c in self.conditions)

	@property
	def certification(self) -> str:
		return NECESSARY if any(c.level == NECESSARY for c in self.conditions) else CERTIFIED

	def failed(self) -> list[str]:
		return [c.name for c in self.conditions if not c.passed]

	def __getitem__(self, name: str) -> ConditionResult:
		for c in self.conditions:
			if c.name == name:
				return c
		raise KeyError(name)

	def to_json(self) -> dict:
		return {
			"passed": self.passed, "certification": self.certification,
			"conditions": [c.to_json() for c in self.conditions],
			"ambient_genus": self.ambient_genus,
			"presentation": self.presentation.to_json() if self.presentation else None,
			"notes": self.notes,
		}


# --- helpers -------------------------------------------------------------------

def _check_perm(p: Perm, nv: int, ne: int, who: str) -> None:
	if sorted(p.vertices) != list(range(nv)) or sorted(p.edges) != list(range(ne)):
		raise PairError(f"{who} is not a permutation of the vertices and edges")


def _cycles(perm: tuple[int, ...]) -> list[list[int]]:
	seen, out = set(), []
	for s in range(len(perm)):
		if s in seen:
			continue
		cyc, x = [], s
		while x not in seen:
			seen.add(x)
			cyc.append(x)
			x = perm[x]
		out.append(cyc)
	return out


def _incidence_ok(pair: ConfiguredPair, p: Perm) -> bool:
	for i, e in enumerate(pair.edges):
		img = pair.edges[p.edges[i]]
		if Counter(p.vertices[v] for v in e.ends) != Counter(img.ends):
			return False
	return True


def _connected(pair: ConfiguredPair) -> bool:
	nv = len(pair.vertices)
	adj = defaultdict(set)
	for e in pair.edges:
		a, b = e.ends
		adj[a].add(b)
		adj[b].add(a)
	seen, stack = {0}, [0]
	while stack:
		x = stack.pop()
		for y in adj[x] - seen:
			seen.add(y)
			stack.append(y)
	return len(seen) == nv


def ambient_genus(pair: ConfiguredPair) -> int:
	return sum(v.genus for v in pair.vertices) + len(pair.edges) - len(pair.vertices) + 1


def _slot_datum(part: Part, slot):
	if slot == PRINCIPAL:
		return None
	return part.dataset.cone[slot]


def _exponent_consistency(pair: ConfiguredPair, which: str, out: list[str]) -> bool:
	"""Recompute twist exponents of curves glued between periodic return maps."""
	perm = pair.pi_f if which == "F" else pair.pi_g
	idx = [i for i, e in enumerate(pair.edges) if (e.in_f if which == "F" else e.in_g)]
	slots = [pair.edges[i].f_slots if which == "F" else pair.edges[i].g_slots for i in idx]
	parts = [v.f_part if which == "F" else v.g_part for v in pair.vertices]
	if not idx or any(s is None for s in slots):
		return True
	if any(perm.vertices[v] != v for v in range(len(pair.vertices))):
		out.append(f"{which}: exponents not recomputed (vertices are permuted)")
		return True
	if any(p.kind != PERIODIC for p in parts):
		out.append(f"{which}: exponents not recomputed (non-periodic return maps)")
		return True
	ok = True
	factors = []
	for i, s in zip(idx, slots):
		u, v = pair.edges[i].ends
		try:
			a, b = _slot_datum(parts[u], s[0]), _slot_datum(parts[v], s[1])
		except IndexError:
			out.append(f"{which}: edge {i} names a slot that does not exist")
			return False
		na, nb = parts[u].dataset.n, parts[v].dataset.n
		if orbit_size(a, na) != orbit_size(b, nb):
			out.append(f"{which}: edge {i} glues orbits of different sizes")
			ok = False
		factors.append((twist_factor(a, na, b, nb), math.lcm(na, nb)))
	if not ok:
		return False
	degree = minimal_degree([Component(p.dataset) for p in parts], factors)
	for i, (kt, n) in zip(idx, factors):
		e = pair.edges[i]
		want = degree * kt // n
		have = e.q if which == "F" else e.q_prime
		if want != have:
			out.append(f"{which}: edge {i} has exponent {have} but its gluing gives {want} (degree {degree})")
			ok = False
	return ok


def _structure(pair: ConfiguredPair) -> ConditionResult:
	notes: list[str] = []
	ok = True
	for who, p in (("pi_F", pair.pi_f), ("pi_G", pair.pi_g)):
		if not _incidence_ok(pair, p):
			notes.append(f"{who} does not preserve incidence")
			ok = False
	for i, e in enumerate(pair.edges):
		if e.in_f != (e.q is not None) or e.q == 0:
			notes.append(f"edge {i}: q must be a nonzero integer exactly on C(F)")
			ok = False
		if e.in_g != (e.q_prime is not None) or e.q_prime == 0:
			notes.append(f"edge {i}: q' must be a nonzero integer exactly on C(G)")
			ok = False
	for who, p, attr in (("pi_F", pair.pi_f, "in_f"), ("pi_G", pair.pi_g, "in_g")):
		for i, e in enumerate(pair.edges):
			if getattr(e, attr) != getattr(pair.edges[p.edges[i]], attr):
				notes.append(f"{who} moves edge {i} out of its own reduction system")
				ok = False
	# a map commutes with its own multitwist power, so it keeps each exponent
	for who, p, attr in (("pi_F", pair.pi_f, "q"), ("pi_G", pair.pi_g, "q_prime")):
		for i, e in enumerate(pair.edges):
			mine, image = getattr(e, attr), getattr(pair.edges[p.edges[i]], attr)
			if mine is not None and image is not None and mine != image:
				notes.append(f"{who} sends edge {i} (exponent {mine}) to edge {p.edges[i]} (exponent {image})")
				ok = False
	for i, v in enumerate(pair.vertices):
		for side, part in (("F", v.f_part), ("G", v.g_part)):
			if part.kind == PERIODIC:
				rep = validate(part.dataset, min_genus=0)
				if not rep.ok:
					notes.append(f"vertex {i} {side}-part: " + "; ".join(rep.describe()))
					ok = False
				elif int(rep.genus) != v.genus:
					notes.append(f"vertex {i} {side}-part has genus {int(rep.genus)}, vertex genus is {v.genus}")
					ok = False
	if not _connected(pair):
		notes.append("the curve graph is disconnected")
		ok = False
	c_f = [e for e in pair.edges if e.in_f]
	c_g = [e for e in pair.edges if e.in_g]
	if pair.n is None:
		if not c_f:
			notes.append("F has infinite order but no reduction curves")
			ok = False
		if pair.k not in (1, -1):
			notes.append("k must be +-1 when F has infinite order")
			ok = False
	else:
		if c_f:
			notes.append("F is periodic but carries twist curves")
			ok = False
		if not c_g:
			notes.append("both F and G are periodic")
			ok = False
		if math.gcd(pair.k, pair.n) != 1:
			notes.append(f"k={pair.k} is not a unit mod n={pair.n}")
			ok = False
		for i, v in enumerate(pair.vertices):
			if v.f_part.kind == PSEUDO_ANOSOV:
				notes.append(f"vertex {i}: a periodic F cannot restrict to a pseudo-Anosov map")
				ok = False
			if v.f_part.kind == PERIODIC and pair.n % v.f_part.dataset.n:
				notes.append(f"vertex {i}: F-part degree {v.f_part.dataset.n} does not divide n={pair.n}")
				ok = False
	if not c_g and pair.m < 1:
		notes.append("G has no valid order")
		ok = False
	if ok:
		ok = _exponent_consistency(pair, "F", notes) and ok
		ok = _exponent_consistency(pair, "G", notes) and ok
	return ConditionResult("structure", ok, CERTIFIED, notes)


def _table(part: Part, e: int, vertex: int) -> frozenset:
	if e not in part.conjugacy:
		raise PairError(f"vertex {vertex}: conjugacy table of {part.label!r} has no entry for exponent {e}")
	return part.conjugacy[e]


def _reduced(k: int, e: int, n: int | None) -> int:
	"""k^e, reduced mod n when F is periodic (exact integer otherwise)."""
	return pow(k, e, n) if n else k ** e


# --- main check ----------------------------------------------------------------

def check_metacyclic(pair: ConfiguredPair) -> Verdict:
	"""Evaluate the five conditions for <F, G> to be infinite metacyclic with G^-1 F G = F^k."""
	nv, ne = len(pair.vertices), len(pair.edges)
	_check_perm(pair.pi_f, nv, ne, "pi_F")
	_check_perm(pair.pi_g, nv, ne, "pi_G")
	for e in pair.edges:
		if len(e.ends) != 2 or not all(0 <= x < nv for x in e.ends):
			raise PairError(f"edge endpoints {e.ends} out of range")
	results = [_structure(pair)]
	k = pair.k

	results.append(ConditionResult("i", True, CERTIFIED,
		[f"{ne} disjoint curves encoded; C(F) ∪ C(G) is a multicurve by construction"]))

	if pair.n is None:
		results.append(ConditionResult("ii", True, CERTIFIED, ["F has infinite order; no congruence to check"]))
	else:
		ok = pow(k, pair.m, pair.n) == 1 % pair.n
		results.append(ConditionResult("ii", ok, CERTIFIED, [f"{k}^{pair.m} mod {pair.n} = {pow(k, pair.m, pair.n)}"]))

	notes = []
	ok = True
	g_img = pair.pi_g.edges
	classes = sorted({e.q for e in pair.edges if e.in_f})
	for qi in classes:
		a = {i for i, e in enumerate(pair.edges) if e.in_f and e.q == qi}
		b = {i for i, e in enumerate(pair.edges) if e.in_f and e.q == k * qi}
		ga = {g_img[i] for i in a}
		gb = {g_img[i] for i in b}
		if ga != b or gb != a:
			notes.append(f"exponent {qi}: G(A)={sorted(ga)} B={sorted(b)} G(B)={sorted(gb)} A={sorted(a)}")
			ok = False
	f_img = pair.pi_f.edges
	for qi in sorted({e.q_prime for e in pair.edges if e.in_g}):
		c = {i for i, e in enumerate(pair.edges) if e.in_g and e.q_prime == qi}
		if {f_img[i] for i in c} != c:
			notes.append(f"exponent {qi} of G: F does not preserve {sorted(c)}")
			ok = False
	results.append(ConditionResult("iii", ok, CERTIFIED, notes))

	notes = []
	ok = True
	level = CERTIFIED
	for cyc in _cycles(pair.pi_g.vertices):
		p = len(cyc)
		for r in cyc:
			part = pair.vertices[r].f_part
			e = _reduced(k, p, pair.n)
			if part.kind == IDENTITY:
				continue
			if part.kind == PERIODIC:
				level = NECESSARY
				ds = part.dataset
				if math.gcd(e, ds.n) != 1:
					notes.append(f"vertex {r}: k^{p} is not a unit mod {ds.n}")
					ok = False
					continue
				e_n = e % ds.n
				if power(ds, e_n) != ds:
					notes.append(f"vertex {r}: F_r^{e_n} is not conjugate to F_r")
					ok = False
				if autk_exists(ds, e_n) is None:
					notes.append(f"vertex {r}: no orbifold automorphism twisting by {e_n}")
					ok = False
			else:
				if part.label not in _table(part, e, r):
					notes.append(f"vertex {r}: table does not relate {part.label} to its power {e}")
					ok = False
	results.append(ConditionResult("iv", ok, level, notes))

	notes = []
	ok = True
	for r in range(nv):
		s = pair.pi_g.vertices[r]
		if s == r:
			continue
		fr, fs = pair.vertices[r].f_part, pair.vertices[s].f_part
		if fr.kind != fs.kind:
			notes.append(f"vertices {r} -> {s}: return maps of different kinds")
			ok = False
		elif fr.kind == PERIODIC:
			if fr.dataset.n != fs.dataset.n or math.gcd(k, fr.dataset.n) != 1 \
					or power(fr.dataset, k % fr.dataset.n) != fs.dataset:
				notes.append(f"vertices {r} -> {s}: F_r^{k} is not conjugate to F_s")
				ok = False
		elif fr.kind == PSEUDO_ANOSOV:
			if fs.label not in _table(fr, k, r):
				notes.append(f"vertices {r} -> {s}: table does not relate {fr.label}^{k} to {fs.label}")
				ok = False
	results.append(ConditionResult("v", ok, CERTIFIED, notes))

	verdict = Verdict(results, ambient_genus(pair))
	if verdict.passed:
		g_order = None if any(e.in_g for e in pair.edges) else pair.m
		try:
			verdict.presentation = classify_presentation(pair.n, g_order, k)
		except ValueError as exc:
			verdict.notes.append(f"presentation: {exc}")
	return verdict


def check_level_m(pair: ConfiguredPair, m: int) -> Verdict:
	"""Necessary shape of a metacyclic pair inside a level-m subgroup, m > 2.

	There the pair must commute, every nontrivial return map must be
	pseudo-Anosov, and parts sharing a support must share a common root.
	"""
	if m <= 2:
		raise PairError("level-m analysis needs m > 2")
	if pair.level is not None and pair.level != m:
		raise PairError(f"pair is marked level {pair.level}, not {m}")
	nv, ne = len(pair.vertices), len(pair.edges)
	_check_perm(pair.pi_f, nv, ne, "pi_F")
	_check_perm(pair.pi_g, nv, ne, "pi_G")
	results = []
	inc = _incidence_ok(pair, pair.pi_f) and _incidence_ok(pair, pair.pi_g)
	results.append(ConditionResult("structure", inc and ne > 0, CERTIFIED,
		[] if inc and ne > 0 else ["permutations break incidence or there are no reduction curves"]))

	notes = []
	ok = pair.k == 1
	if not ok:
		notes.append(f"k={pair.k}; level-m pairs must commute")
	comp = lambda p, q: tuple(p[q[i]] for i in range(len(q)))
	if comp(pair.pi_f.vertices, pair.pi_g.vertices) != comp(pair.pi_g.vertices, pair.pi_f.vertices) \
			or comp(pair.pi_f.edges, pair.pi_g.edges) != comp(pair.pi_g.edges, pair.pi_f.edges):
		notes.append("the induced permutations do not commute")
		ok = False
	results.append(ConditionResult("commute", ok, CERTIFIED, notes))

	notes = []
	ok = True
	for i, v in enumerate(pair.vertices):
		for side, part in (("F", v.f_part), ("G", v.g_part)):
			if part.kind == PERIODIC:
				notes.append(f"vertex {i}: nontrivial {side}-part is periodic")
				ok = False
	results.append(ConditionResult("pseudo-anosov", ok, CERTIFIED, notes))

	notes = []
	ok = True
	for i, v in enumerate(pair.vertices):
		f, g = v.f_part, v.g_part
		if f.kind == PSEUDO_ANOSOV and g.kind == PSEUDO_ANOSOV:
			if f.root is None or g.root is None:
				raise PairError(f"vertex {i}: pseudo-Anosov parts share a support but carry no root certificate")
			if f.root[0] != g.root[0]:
				notes.append(f"vertex {i}: roots {f.root[0]} and {g.root[0]} differ")
				ok = False
	results.append(ConditionResult("cyclic", ok, CERTIFIED, notes))
	return Verdict(results, ambient_genus(pair))
