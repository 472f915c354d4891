"""Integer homology representations of twists and polygon symmetries.

Vectors are coordinates in the basis of edge labels (for a one-vertex
polygon) or of chain-curve labels (for the chain lattice).  Matrices act on
column vectors, and a word is multiplied in the order written, so the
rightmost letter acts first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .intmat import Matrix, charpoly, cyclotomic_part


class HomologyError(ValueError):
	pass


# --- polygon words ---------------------------------------------------------------

@dataclass(frozen=True)
class PolygonWord:
	letters: tuple[tuple[str, int], ...]     # (label, +1 or -1), read counterclockwise

	@classmethod
	def parse(cls, text: str) -> PolygonWord:
		letters = []
		for tok in text.replace(",", " ").split():
			if tok.endswith("'"):
				letters.append((tok[:-1], -1))
			elif tok.endswith("^-1"):
				letters.append((tok[:-3], -1))
			else:
				letters.append((tok, 1))
		word = cls(tuple(letters))
		word.check()
		return word

	def __str__(self) -> str:
		return " ".join(lab + ("'" if s < 0 else "") for lab, s in self.letters)

	@property
	def labels(self) -> tuple[str, ...]:
		seen: list[str] = []
		for lab, _ in self.letters:
			if lab not in seen:
				seen.append(lab)
		return tuple(seen)

	@property
	def genus(self) -> int:
		return len(self.letters) // 4

	def check(self) -> None:
		counts: dict[str, list[int]] = {}
		for lab, s in self.letters:
			counts.setdefault(lab, []).append(s)
		for lab, signs in counts.items():
			if len(signs) != 2:
				raise HomologyError(f"label {lab} appears {len(signs)} times")
			if signs[0] == signs[1]:
				raise HomologyError(f"label {lab} is glued with a reflection (non-orientable)")
		cycles = vertex_cycles(self)
		if len(cycles) != 1:
			raise HomologyError(f"the identified polygon has {len(cycles)} vertices, expected 1")
		if len(self.letters) % 4:
			raise HomologyError("word length is not a multiple of 4")


def _start(letter: tuple[str, int]) -> tuple[str, str]:
	lab, s = letter
	return (lab, "t" if s > 0 else "h")


def _end(letter: tuple[str, int]) -> tuple[str, str]:
	lab, s = letter
	return (lab, "h" if s > 0 else "t")


def vertex_cycles(word: PolygonWord) -> list[list[tuple[str, str]]]:
	"""Cyclic orders of edge germs around each vertex of the identified polygon.

	Corner i sits between letters i-1 and i; inside the polygon, turning
	counterclockwise at that corner goes from the start of letter i to the end
	of letter i-1.  Gluing continues the turn into the corner whose first germ
	is that end.
	"""
	w = word.letters
	L = len(w)
	first = {_start(w[i]): i for i in range(L)}
	seen: set[int] = set()
	cycles = []
	for s in range(L):
		if s in seen:
			continue
		order, i = [], s
		while i not in seen:
			seen.add(i)
			order.append(_start(w[i]))
			i = first[_end(w[i - 1])]
		cycles.append(order)
	return cycles


@dataclass(frozen=True)
class SkewForm:
	labels: tuple[str, ...]
	matrix: Matrix

	def __post_init__(self) -> None:
		if self.matrix.T != -self.matrix:
			raise HomologyError("form is not antisymmetric")

	def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
		return sum(a * b for a, b in zip(x, self.matrix.apply(y)))

	def vector(self, coeffs: Mapping[str, int]) -> tuple[int, ...]:
		unknown = set(coeffs) - set(self.labels)
		if unknown:
			raise HomologyError(f"unknown labels {sorted(unknown)}")
		return tuple(coeffs.get(lab, 0) for lab in self.labels)

	def basis(self, label: str) -> tuple[int, ...]:
		return self.vector({label: 1})


def intersection_form(word: PolygonWord) -> SkewForm:
	"""Algebraic intersection numbers of the edge loops of a one-vertex polygon.

	Two loops meet only at the vertex.  Each passes through it entering along
	its head germ and leaving along its tail germ; the passages cross exactly
	when their germs alternate around the vertex, with the sign given by the
	order of alternation.
	"""
	word.check()
	order = vertex_cycles(word)[0]
	pos = {germ: i for i, germ in enumerate(order)}
	labels = word.labels
	size = len(order)
	rows = []
	for x in labels:
		row = []
		for y in labels:
			if x == y:
				row.append(0)
				continue
			p1 = pos[(x, "h")]
			rel = lambda germ: (pos[germ] - p1) % size
			p2, q1, q2 = rel((x, "t")), rel((y, "h")), rel((y, "t"))
			if q1 < p2 < q2:
				row.append(1)
			elif q2 < p2 < q1:
				row.append(-1)
			else:
				row.append(0)
		rows.append(row)
	return SkewForm(labels, Matrix(rows))


def symmetric_word(g: int) -> PolygonWord:
	"""a1 ... a2g a1' ... a2g': opposite sides of the 4g-gon identified."""
	labs = [f"a{i}" for i in range(1, 2 * g + 1)]
	return PolygonWord(tuple((x, 1) for x in labs) + tuple((x, -1) for x in labs))


def polygon_form(g: int) -> SkewForm:
	return intersection_form(symmetric_word(g))


def polygon_rotation(word: PolygonWord, steps: int = 1) -> Matrix:
	"""Action on edge classes of rotating the polygon by ``steps`` sides.

	Raises unless the rotation respects the side pairing.
	"""
	w = word.letters
	L = len(w)
	labels = word.labels
	idx = {lab: i for i, lab in enumerate(labels)}
	image: dict[str, tuple[str, int]] = {}
	for p, (lab, s) in enumerate(w):
		tgt, t = w[(p + steps) % L]
		img = (tgt, s * t)
		if image.setdefault(lab, img) != img:
			raise HomologyError(f"rotation by {steps} does not respect the side pairing")
	cols = [[0] * len(labels) for _ in labels]
	for lab, (tgt, sign) in image.items():
		cols[idx[lab]][idx[tgt]] = sign
	return Matrix(cols).T


def rotation_matrix(g: int) -> Matrix:
	"""Rotation of the symmetric 4g-gon by one side: a_i -> a_(i+1), a_2g -> -a_1."""
	if g < 1:
		raise HomologyError("genus must be positive")
	return polygon_rotation(symmetric_word(g), 1)


def polygon_curves(g: int) -> dict[str, tuple[int, ...]]:
	"""Classes of the curves c_i = a_i a_(i+1) and c_2g = a_2g a_1^-1."""
	n = 2 * g
	out = {}
	for i in range(1, n + 1):
		v = [0] * n
		v[i - 1] += 1
		if i < n:
			v[i] += 1
		else:
			v[0] -= 1
		out[f"c{i}"] = tuple(v)
	return out


# --- chain lattice -------------------------------------------------------------------

def chain_labels(g: int) -> tuple[str, ...]:
	out = ["b1"]
	for i in range(1, g + 1):
		out += [f"a{i}", f"b{i + 1}"]
	return tuple(out)


def chain_form(g: int) -> SkewForm:
	"""Skew form on the free lattice of the chain b1, a1, b2, ..., ag, b(g+1).

	Consecutive curves meet once; this form has a one-dimensional radical.
	"""
	labels = chain_labels(g)
	n = len(labels)
	rows = [[1 if j == i + 1 else -1 if j == i - 1 else 0 for j in range(n)] for i in range(n)]
	return SkewForm(labels, Matrix(rows))


def hyperelliptic_matrix(dim: int) -> Matrix:
	return -Matrix.identity(dim)


# --- twists and words -------------------------------------------------------------------

def _form_matrix(form) -> Matrix:
	return form.matrix if isinstance(form, SkewForm) else form


def transvection(form, v: Sequence[int], q: int = 1) -> Matrix:
	"""Action of T_c^q where [c] = v: x -> x + q <v, x> v."""
	j = _form_matrix(form)
	vj = [sum(v[r] * j[r, c] for r in range(j.dim)) for c in range(j.dim)]
	return Matrix([[int(r == c) + q * v[r] * vj[c] for c in range(j.dim)] for r in range(j.dim)])


def preserves(m: Matrix, form) -> bool:
	j = _form_matrix(form)
	return m.T @ j @ m == j


def parse_twist_word(obj) -> list[tuple[str, int]]:
	out = []
	for item in obj:
		lab, e = item
		if int(e) == 0:
			raise HomologyError(f"zero exponent on {lab}")
		out.append((str(lab), int(e)))
	return out


def word_matrix(word: Sequence[tuple[str, int]], form, classes: Mapping[str, Sequence[int]],
		maps: Mapping[str, Matrix] | None = None) -> Matrix:
	maps = maps or {}
	out = Matrix.identity(_form_matrix(form).dim)
	for lab, e in word:
		if lab in maps:
			out = out @ (maps[lab] ** e)
		elif lab in classes:
			out = out @ transvection(form, classes[lab], e)
		else:
			raise HomologyError(f"unresolved label {lab!r}")
	return out


def check_relation(a: Matrix, b: Matrix, k: int) -> bool:
	"""Exact test of B^-1 A B = A^k."""
	return b.inverse() @ a @ b == a ** k


# --- order and growth ------------------------------------------------------------------

@dataclass(frozen=True)
class OrderResult:
	kind: str                 # "finite", "infinite" or "inconclusive"
	order: int | None = None
	certificate: str = ""

	def to_json(self) -> dict:
		return {"kind": self.kind, "order": self.order, "certificate": self.certificate}


def order_on_homology(m: Matrix, bound: int | None = None) -> OrderResult:
	"""Finite order up to ``bound`` by powering, else an exact infinite-order certificate.

	The certificate is either a characteristic-polynomial factor that is not
	cyclotomic, or a nontrivial unipotent part: if every root is a root of
	unity of order dividing N yet M^N is not I, no power of M is I.
	"""
	dim = m.dim
	bound = 6 * dim if bound is None else bound
	p = m
	for t in range(1, bound + 1):
		if p.is_identity():
			return OrderResult("finite", t, f"M^{t} = I")
		p = p @ m
	found, rest = cyclotomic_part(charpoly(m))
	if len(rest) > 1:
		return OrderResult("infinite", None, f"characteristic polynomial has a non-cyclotomic factor {rest}")
	big = math.lcm(*found) if found else 1
	if big > 10 ** 6:
		return OrderResult("inconclusive", None, f"cyclotomic indices {sorted(found)} exceed the search cap")
	if not (m ** big).is_identity():
		return OrderResult("infinite", None, f"eigenvalues are roots of unity but M^{big} != I")
	for d in sorted(x for x in range(1, big + 1) if big % x == 0):
		if (m ** d).is_identity():
			return OrderResult("finite", d, f"M^{d} = I")
	raise AssertionError("unreachable")


def level_m_member(m: Matrix, modulus: int) -> bool:
	if modulus < 2:
		raise HomologyError("modulus must be at least 2")
	return m.mod(modulus) == Matrix.identity(m.dim).mod(modulus)


@dataclass(frozen=True)
class SpectralBound:
	power: int
	value: Fraction           # rho(M)^power >= value

	@property
	def approx(self) -> float:
		return float(self.value) ** (1 / self.power)

	def exceeds(self, x: Fraction | int) -> bool:
		return self.value > Fraction(x) ** self.power

	def to_json(self) -> dict:
		return {"power": self.power, "numerator": self.value.numerator, "denominator": self.value.denominator,
			"approx": self.approx}


def spectral_lower_bound(m: Matrix, steps: int | None = None) -> SpectralBound:
	"""Rigorous lower bound on the spectral radius from traces of powers.

	Since |tr M^t| <= dim * rho^t, each t gives rho >= (|tr M^t| / dim)^(1/t);
	the best of t = 1..steps is returned as an exact (power, value) pair.
	Default steps: 4 * dim.
	"""
	dim = m.dim
	steps = 4 * dim if steps is None else steps
	best = SpectralBound(1, Fraction(abs(m.trace()), dim))
	p = m
	for t in range(2, steps + 1):
		p = p @ m
		cand = Fraction(abs(p.trace()), dim)
		# compare cand^(1/t) with best^(1/best.power) exactly
		if cand ** best.power > best.value ** t:
			best = SpectralBound(t, cand)
	return best


# --- formal (permutation-level) conjugation ---------------------------------------------

@dataclass(frozen=True)
class FormalResult:
	status: str              # "certified" or "not-applicable"
	reason: str = ""


def formal_conjugation_check(support: Sequence[str], q: Mapping[str, int], sigma: Mapping[str, str], k: int,
		intersecting: Sequence[tuple[str, str]] = ()) -> FormalResult:
	"""Certify G^-1 F G = F^k for a multitwist F = prod T_c^q(c) with disjoint curves.

	``sigma`` is the permutation G induces on the support and ``intersecting``
	lists the pairs of support curves that meet.  Since the twists commute,
	conjugation just relabels them and the exponents must transform by k.
	"""
	sup = set(support)
	bad = [p for p in intersecting if p[0] in sup and p[1] in sup and p[0] != p[1]]
	if bad:
		return FormalResult("not-applicable", f"support curves meet: {bad}")
	if set(sigma) != sup or set(sigma.values()) != sup:
		return FormalResult("not-applicable", "sigma is not a permutation of the support")
	inv = {v: c for c, v in sigma.items()}
	for c in support:
		if q[inv[c]] != k * q[c]:
			return FormalResult("not-applicable", f"exponent of {inv[c]} is not {k} times that of {c}")
	return FormalResult("certified", "disjoint support; exponents transform by k")


# --- word files ----------------------------------------------------------------------

def load_lattice(doc: Mapping) -> tuple[SkewForm, dict[str, tuple[int, ...]]]:
	"""Form and curve classes described by a word file's ``lattice``/``curves`` entries."""
	lat = doc["lattice"]
	kind = lat["kind"]
	if kind == "chain":
		form = chain_form(int(lat["genus"]))
	elif kind == "polygon":
		word = PolygonWord.parse(lat["word"]) if "word" in lat else symmetric_word(int(lat["genus"]))
		form = intersection_form(word)
	else:
		raise HomologyError(f"unknown lattice kind {kind!r}")
	classes = {lab: form.basis(lab) for lab in form.labels}
	if kind == "polygon" and "word" not in lat:
		classes.update(polygon_curves(int(lat["genus"])))
	for lab, coeffs in doc.get("curves", {}).items():
		classes[lab] = form.vector(coeffs)
	return form, classes


def load_word_file(doc: Mapping) -> tuple[SkewForm, Matrix]:
	form, classes = load_lattice(doc)
	maps = {lab: Matrix(rows) for lab, rows in doc.get("maps", {}).items()}
	return form, word_matrix(parse_twist_word(doc["word"]), form, classes, maps)
