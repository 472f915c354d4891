"""Built-in worked examples: configured pairs, assembly inputs and homology checks.

The JSON files under ``fixtures/`` in the repository are exported from these
builders (``metacyclic homology fixtures export``) and a test keeps them in sync.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .dataset import format_dataset, parse, power
from .homology import (chain_form, check_relation, formal_conjugation_check, hyperelliptic_matrix,
	level_m_member, order_on_homology, polygon_curves, polygon_form, preserves, rotation_matrix,
	spectral_lower_bound, word_matrix)
from .intmat import Matrix
from .multitwist import assemble
from .pairs import ConfiguredPair, check_level_m, check_metacyclic


def _periodic(ds: str) -> dict:
	return {"kind": "periodic", "dataset": ds}


IDENT = {"kind": "identity"}


# --- configured pairs (JSON form) ---------------------------------------------------

def twist_root_with_free_involution() -> dict:
	"""Degree-3 root of a nonseparating twist on genus 3, commuting with a free involution."""
	return {
		"name": "twist root commuting with a free involution",
		"vertices": [{"genus": 2, "f_part": _periodic("(3,0;(1,3),(1,3),(2,3),(2,3))"),
			"g_part": _periodic("(2,1;(1,2),(1,2))")}],
		"edges": [{"ends": [0, 0], "membership": "F", "q": 1, "q_prime": None,
			"f_slots": [2, 3], "g_slots": None}],
		"pi_F": {"vertices": [0], "edges": [0]},
		"pi_G": {"vertices": [0], "edges": [0]},
		"n": None, "m": 2, "k": 1, "level": None,
	}


def multitwist_root_with_involution(g: int) -> dict:
	"""Degree-(2g+1) root of T_a^q T_b^-q on genus 2g+1, inverted by a free involution."""
	n = 2 * g + 1
	left = parse(f"({n},0;({g},{n}),(1,{n}),({g},{n}))")
	right = power(left, -1)
	pds = assemble([left, right], [((0, 0), (1, 1)), ((0, 1), (1, 0))])
	qa, qb = (p.q for p in pds.pairings)
	return {
		"name": f"degree-{n} multitwist root inverted by an involution, genus {2 * g + 1}",
		"vertices": [
			{"genus": g, "f_part": _periodic(format_dataset(left)), "g_part": IDENT},
			{"genus": g, "f_part": _periodic(format_dataset(right)), "g_part": IDENT},
		],
		"edges": [
			{"ends": [0, 1], "membership": "F", "q": qa, "q_prime": None, "f_slots": [0, 1], "g_slots": None},
			{"ends": [0, 1], "membership": "F", "q": qb, "q_prime": None, "f_slots": [1, 0], "g_slots": None},
		],
		"pi_F": {"vertices": [0, 1], "edges": [0, 1]},
		"pi_G": {"vertices": [1, 0], "edges": [1, 0]},
		"n": None, "m": 2, "k": -1, "level": None,
	}


def square_root_inverting_periodic(g: int) -> dict:
	"""Degree-2 root G of T_a^2 T_b^-2 inverting a periodic F of order 2g+1."""
	n = 2 * g + 1
	left = parse(f"({n},0;(1,{n}),({g},{n}),({g},{n}))")
	right = power(left, -1)
	return {
		"name": f"square root of T_a^2 T_b^-2 inverting an order-{n} map, genus {2 * g + 1}",
		"vertices": [
			{"genus": g, "f_part": _periodic(format_dataset(left)), "g_part": IDENT},
			{"genus": g, "f_part": _periodic(format_dataset(right)), "g_part": IDENT},
		],
		"edges": [
			{"ends": [0, 1], "membership": "G", "q": None, "q_prime": 2, "f_slots": None, "g_slots": None},
			{"ends": [0, 1], "membership": "G", "q": None, "q_prime": -2, "f_slots": None, "g_slots": None},
		],
		"pi_F": {"vertices": [0, 1], "edges": [0, 1]},
		"pi_G": {"vertices": [1, 0], "edges": [0, 1]},
		"n": n, "m": 2, "k": -1, "level": None,
	}


def commuting_pseudo_anosov_pair() -> dict:
	"""Two reducible maps with pseudo-Anosov pieces on both sides of a separating curve."""
	def pa(label: str, root: str, e: int) -> dict:
		return {"kind": "pseudo_anosov", "id": label, "conjugacy": {"1": [label]}, "root": [root, e]}
	return {
		"name": "commuting pseudo-Anosov pieces with common roots (level 3)",
		"vertices": [
			{"genus": 1, "f_part": pa("phi^2", "phi", 2), "g_part": pa("phi^3", "phi", 3)},
			{"genus": 1, "f_part": pa("psi", "psi", 1), "g_part": pa("psi^-1", "psi", -1)},
		],
		"edges": [{"ends": [0, 1], "membership": "FG", "q": 1, "q_prime": 2, "f_slots": None, "g_slots": None}],
		"pi_F": {"vertices": [0, 1], "edges": [0]},
		"pi_G": {"vertices": [0, 1], "edges": [0]},
		"n": None, "m": 1, "k": 1, "level": 3,
	}


def pair_fixtures() -> dict[str, dict]:
	out = {"example_zz2s3pp": twist_root_with_free_involution()}
	for g in (2, 3):
		out[f"multitwist_root_involution_g{g}"] = multitwist_root_with_involution(g)
		out[f"square_root_inverting_g{g}"] = square_root_inverting_periodic(g)
	return out


def _set(obj: dict, path: tuple, value) -> dict:
	out = copy.deepcopy(obj)
	cur = out
	for key in path[:-1]:
		cur = cur[key]
	cur[path[-1]] = value
	return out


@dataclass(frozen=True)
class Mutation:
	fixture: str
	description: str
	pair: dict


def pair_mutations() -> list[Mutation]:
	"""Single-field edits of the fixtures, each of which breaks a condition."""
	fx = pair_fixtures()
	muts = []
	base = fx["example_zz2s3pp"]
	muts += [
		Mutation("example_zz2s3pp", "k = -1", _set(base, ("k",), -1)),
		Mutation("example_zz2s3pp", "exponent of c negated", _set(base, ("edges", 0, "q"), -1)),
		Mutation("example_zz2s3pp", "F-part slots reordered", _set(base, ("vertices", 0, "f_part", "dataset"),
			"(3,0;(2,3),(2,3),(1,3),(1,3))")),
		Mutation("example_zz2s3pp", "F declared periodic of order 3", _set(base, ("n",), 3)),
	]
	for g in (2, 3):
		name = f"multitwist_root_involution_g{g}"
		base = fx[name]
		qa = base["edges"][0]["q"]
		muts += [
			Mutation(name, "exponent of a negated", _set(base, ("edges", 0, "q"), -qa)),
			Mutation(name, "G fixes a and b", _set(base, ("pi_G", "edges"), [0, 1])),
			Mutation(name, "G fixes both sides", _set(base, ("pi_G", "vertices"), [0, 1])),
			Mutation(name, "k = 1", _set(base, ("k",), 1)),
			Mutation(name, "right side replaced by the left", _set(base, ("vertices", 1, "f_part"),
				copy.deepcopy(base["vertices"][0]["f_part"]))),
		]
		name = f"square_root_inverting_g{g}"
		base = fx[name]
		muts += [
			Mutation(name, "k = 2", _set(base, ("k",), 2)),
			Mutation(name, "degree of G = 3", _set(base, ("m",), 3)),
			Mutation(name, "F swaps a and b", _set(base, ("pi_F", "edges"), [1, 0])),
			Mutation(name, "G fixes both sides", _set(base, ("pi_G", "vertices"), [0, 1])),
			Mutation(name, "k = 1", _set(base, ("k",), 1)),
			Mutation(name, "G swaps a and b", _set(base, ("pi_G", "edges"), [1, 0])),
		]
	return muts


# --- assembly inputs -------------------------------------------------------------------

def assembly_inputs() -> dict[str, dict]:
	return {
		"assembly_self_glued_degree5": {
			"components": [{"dataset": "(5,0;(4,5),(3,5),(3,5))", "orbit_size": 1}],
			"pairings": [[[0, 1], [0, 2]]],
		},
		"assembly_degree40": {
			"components": [{"dataset": "(8,0;(1,2),(5,8),(7,8))", "orbit_size": 1},
				{"dataset": "(10,0;(1,2),(2,5),(1,10))", "orbit_size": 1}],
			"pairings": [[[0, 2], [1, 2]]],
		},
		"assembly_degree60": {
			"components": [{"dataset": "(4,0;(1,4),(3,4),(1,2),(1,2))", "orbit_size": 1},
				{"dataset": "(5,0;(1,5),(3,5),(1,5))", "orbit_size": 1},
				{"dataset": "(3,0;(1,3),(1,3),(2,3),(2,3))", "orbit_size": 1}],
			"pairings": [[[0, 1], [1, 0]], [[1, 1], [2, 2]]],
		},
	}


# --- homology word files ------------------------------------------------------------------

def penner_squares(g: int = 3) -> dict:
	"""prod T_(a_i)^2 prod T_(b_j)^-2 on the chain lattice."""
	word = [[f"a{i}", 2] for i in range(1, g + 1)] + [[f"b{j}", -2] for j in range(1, g + 2)]
	return {"lattice": {"kind": "chain", "genus": g}, "word": word}


def octagon_penner() -> dict:
	return {"lattice": {"kind": "polygon", "genus": 2}, "word": [["c1", 1], ["c3", 1], ["c2", -1], ["c4", -1]]}


def word_files() -> dict[str, dict]:
	return {"penner_squares": penner_squares(3), "octagon_penner": octagon_penner()}


def export(directory: str | Path) -> list[Path]:
	d = Path(directory)
	d.mkdir(parents=True, exist_ok=True)
	written = []
	items = {**pair_fixtures(), "level3_commuting_pa": commuting_pseudo_anosov_pair(),
		**assembly_inputs(), **word_files()}
	for name, obj in items.items():
		path = d / f"{name}.json"
		path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
		written.append(path)
	return written


# --- runnable checks ------------------------------------------------------------------------

@dataclass
class Outcome:
	name: str
	passed: bool
	details: list[str] = field(default_factory=list)

	def to_json(self) -> dict:
		return {"fixture": self.name, "passed": self.passed, "details": self.details}


def penner_word(g: int) -> list[tuple[str, int]]:
	"""prod T_(c_odd) prod T_(c_even)^-1 over the 2g curves c_i of the 4g-gon."""
	return [(f"c{2 * i - 1}", 1) for i in range(1, g + 1)] + [(f"c{2 * i}", -1) for i in range(1, g + 1)]


def _polygon_fixture(g: int) -> Outcome:
	form = polygon_form(g)
	rot = rotation_matrix(g)
	mf = word_matrix(penner_word(g), form, polygon_curves(g))
	order = order_on_homology(rot)
	cert = order_on_homology(mf)
	checks = {
		"rotation preserves the form": preserves(rot, form),
		f"rotation has order {4 * g}": order.kind == "finite" and order.order == 4 * g,
		f"rotation^{2 * g} = -I": rot ** (2 * g) == -Matrix.identity(2 * g),
		"G^-1 F G = F^-1": check_relation(mf, rot, -1),
		"G^-2 F G^2 = F": check_relation(mf, rot ** 2, 1),
		"F has infinite order": cert.kind == "infinite",
		"spectral radius of F exceeds 1": spectral_lower_bound(mf).exceeds(1),
		"F preserves the form": preserves(mf, form),
	}
	return Outcome(f"polygon_penner_g{g}", all(checks.values()),
		[f"{k}: {v}" for k, v in checks.items()] + [cert.certificate])


def _multitwist_fixture(g: int) -> Outcome:
	"""F = prod T_(c_(4i-3)) T_(c_(4i-1))^-1 and G the rotation by two sides (order 2g)."""
	form = polygon_form(g)
	curves = polygon_curves(g)
	support = [f"c{2 * i - 1}" for i in range(1, g + 1)]
	q = {c: (1 if t % 2 == 0 else -1) for t, c in enumerate(support)}
	sigma = {support[t]: support[(t + 1) % g] for t in range(g)}
	meets = [(a, b) for a in support for b in support if a < b and form.pair(curves[a], curves[b]) != 0]
	formal = formal_conjugation_check(support, q, sigma, -1, meets)
	word = [(c, q[c]) for c in support]
	mf = word_matrix(word, form, curves)
	rot2 = rotation_matrix(g) ** 2
	checks = {
		"supports are disjoint in homology": not meets,
		"formal check certifies k = -1": formal.status == "certified",
		"G^-1 F G = F^-1 on homology": check_relation(mf, rot2, -1),
		"G^-2 F G^2 = F on homology": check_relation(mf, rot2 ** 2, 1),
		f"G has order {2 * g}": order_on_homology(rot2).order == 2 * g,
	}
	return Outcome(f"polygon_multitwist_g{g}", all(checks.values()), [f"{k}: {v}" for k, v in checks.items()])


def _level_fixture(g: int) -> Outcome:
	form = chain_form(g)
	classes = {lab: form.basis(lab) for lab in form.labels}
	doc = penner_squares(g)
	mf = word_matrix([(lab, e) for lab, e in doc["word"]], form, classes)
	hyp = hyperelliptic_matrix(form.matrix.dim)
	checks = {
		"F = I mod 2": level_m_member(mf, 2),
		"F commutes with the hyperelliptic matrix": check_relation(mf, hyp, 1),
		"F preserves the chain form": preserves(mf, form),
		"F has infinite order": order_on_homology(mf).kind == "infinite",
	}
	return Outcome(f"penner_squares_level2_g{g}", all(checks.values()), [f"{k}: {v}" for k, v in checks.items()])


def _rotation_not_level2() -> Outcome:
	ok = not level_m_member(rotation_matrix(2), 2)
	return Outcome("rotation_not_level2_g2", ok, [f"rotation_matrix(2) = I mod 2: {not ok}"])


def _flipped_penner() -> Outcome:
	g = 2
	word = penner_word(g)
	word[0] = (word[0][0], -word[0][1])
	mf = word_matrix(word, polygon_form(g), polygon_curves(g))
	broken = not check_relation(mf, rotation_matrix(g), -1)
	return Outcome("flipped_penner_rejected_g2", broken, [f"relation rejected after one exponent flip: {broken}"])


def _chain_hyperelliptic_word(g: int) -> Outcome:
	"""T_b1 T_b2 T_a1^-1 T_a2^-1 T_b3 prod_(i>=3) T_ai T_b(i+1), which commutes with the hyperelliptic map."""
	form = chain_form(g)
	classes = {lab: form.basis(lab) for lab in form.labels}
	word = [("b1", 1), ("b2", 1), ("a1", -1), ("a2", -1), ("b3", 1)]
	for i in range(3, g + 1):
		word += [(f"a{i}", 1), (f"b{i + 1}", 1)]
	mf = word_matrix(word, form, classes)
	ok = check_relation(mf, hyperelliptic_matrix(form.matrix.dim), 1) and preserves(mf, form)
	return Outcome(f"chain_word_hyperelliptic_g{g}", ok, [f"commutes and preserves the form: {ok}"])


def _pair_fixture(name: str, obj: dict) -> Outcome:
	v = check_metacyclic(ConfiguredPair.from_json(obj))
	details = [f"{c.name}: {'pass' if c.passed else 'FAIL'} ({c.level})" for c in v.conditions]
	details.append(f"ambient genus {v.ambient_genus}")
	if v.presentation:
		details.append(f"group {v.presentation.label}")
	return Outcome(f"pair:{name}", v.passed, details)


def _mutation_suite() -> Outcome:
	escaped = []
	for mu in pair_mutations():
		if check_metacyclic(ConfiguredPair.from_json(mu.pair)).passed:
			escaped.append(f"{mu.fixture}: {mu.description}")
	total = len(pair_mutations())
	return Outcome("pair:mutations", not escaped and total >= 10,
		[f"{total} mutations, {total - len(escaped)} rejected"] + [f"escaped: {e}" for e in escaped])


def _level3_fixture() -> Outcome:
	pair = ConfiguredPair.from_json(commuting_pseudo_anosov_pair())
	v = check_level_m(pair, 3)
	w = check_metacyclic(pair)
	return Outcome("level3_commuting_pa", v.passed and w.passed,
		[f"level-3 verdict: {v.passed}", f"metacyclic verdict: {w.passed}"])


def homology_checks() -> list[Callable[[], Outcome]]:
	out: list[Callable[[], Outcome]] = []
	out += [lambda g=g: _polygon_fixture(g) for g in range(2, 6)]
	out += [lambda g=g: _multitwist_fixture(g) for g in (2, 4)]
	out += [lambda g=g: _level_fixture(g) for g in range(2, 6)]
	out += [_rotation_not_level2, _flipped_penner]
	out += [lambda g=g: _chain_hyperelliptic_word(g) for g in (3, 4)]
	return out


def all_checks() -> list[Callable[[], Outcome]]:
	out = homology_checks()
	out += [lambda n=n, o=o: _pair_fixture(n, o) for n, o in pair_fixtures().items()]
	out += [_mutation_suite, _level3_fixture]
	return out


def run_all(workers: int = 1) -> list[Outcome]:
	"""Run every built-in check; the report order never depends on ``workers``."""
	checks = all_checks()
	if workers <= 1:
		return [c() for c in checks]
	from concurrent.futures import ThreadPoolExecutor
	with ThreadPoolExecutor(max_workers=workers) as pool:
		return list(pool.map(lambda c: c(), checks))
