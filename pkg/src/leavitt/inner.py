"""Inner derivations: commutator maps, obstruction scan, witness search.

`ad(cfg, lam)` is the commutator derivation x -> lam*x - x*lam.  The
obstruction scan reads off the beta (path) and gamma (dual path)
coefficients of D(e_1) and D(e_1*) whose index word starts and ends with
the special edge.  The length-2 scalars (index word e_1 e_1) vanish on
every commutator derivation - their two contributions always cancel - so
a nonzero one proves a derivation outer; that is what detects the
Laurent derivative in the one-loop algebra.  Index words of length >= 3
carry nonzero coefficients even for commutators (already ad(e1 e2) has
beta[e1 e2 e1](e1) = 1), so on those the OUTER verdict of
`classify_by_obstruction` is criterion-relative, not a certificate.

`find_inner_witness` is the exact decision procedure: it searches for
lam with ad(lam) = D over all basis monomials up to a length bound by
solving one rational linear system.  A None answer is a certificate of
outerness only up to that bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import (
    AlgebraConfig,
    BasisMonomial,
    Element,
    enumerate_basis,
    generator_name,
    reduce_word,
)
from .derivation import DerivationSpec, coefficients
from .linsolve import Echelon, echelonize, solve_with


def ad(cfg: AlgebraConfig, lam: Element) -> DerivationSpec:
    """The inner derivation determined by lam: x -> lam*x - x*lam."""
    if lam.cfg != cfg:
        raise ValueError("element from a different config")
    values = {}
    for g in cfg.generators():
        x = Element.monomial(cfg, _generator_monomial(g))
        values[g] = lam * x - x * lam
    edges = [values[i] for i in cfg.edge_indices()]
    duals = [values[-i] for i in cfg.edge_indices()]
    return DerivationSpec(cfg, edges, duals)


def _generator_monomial(g: int) -> BasisMonomial:
    return BasisMonomial(w=(g,)) if g > 0 else BasisMonomial(h=(-g,))


@dataclass(frozen=True)
class ObstructionEntry:
    family: str  # "beta" or "gamma"
    generator: int  # +1 for e_1, -1 for e_1*
    word: tuple[int, ...]  # the index path e_1 .. e_1 carrying the value
    value: Fraction

    def describe(self) -> str:
        word = " ".join(f"e{i}" for i in self.word)
        return f"{self.family}[{word}]({generator_name(self.generator)}) = {self.value}"


@dataclass(frozen=True)
class ObstructionReport:
    include_trivial_p: bool
    entries: tuple[ObstructionEntry, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self):
        return iter(self.entries)


def obstruction_coefficients(spec: DerivationSpec,
                             include_trivial_p: bool = True) -> ObstructionReport:
    """Nonzero beta/gamma coefficients on index words e_1 p e_1.

    With include_trivial_p the length-2 word e_1 e_1 (empty p) counts;
    otherwise only words of length >= 3 do.  Scans the values on e_1 and
    e_1* only, which is where the four obstruction families live.
    """
    special = spec.cfg.special_index
    min_len = 2 if include_trivial_p else 3
    table = coefficients(spec)
    entries = []
    for g in (special, -special):
        for family, bucket in (("beta", table.beta.get(g, {})),
                               ("gamma", table.gamma.get(g, {}))):
            for word in sorted(bucket):
                if (len(word) >= min_len
                        and word[0] == special and word[-1] == special):
                    entries.append(ObstructionEntry(family, g, word, bucket[word]))
    return ObstructionReport(include_trivial_p, tuple(entries))


class ObstructionVerdict(enum.Enum):
    # Both labels name the mechanism, not ground truth: INNER means the
    # scan found nothing, OUTER that it found an entry (conclusive only
    # for length-2 index words; see the module docstring).
    INNER_BY_VANISHING = "inner-by-vanishing"
    OUTER_BY_OBSTRUCTION = "outer-by-obstruction"


def classify_by_obstruction(spec: DerivationSpec,
                            include_trivial_p: bool = True) -> ObstructionVerdict:
    if spec.relation_violations:
        raise ValueError("not a derivation: generator values violate the relations")
    if obstruction_coefficients(spec, include_trivial_p):
        return ObstructionVerdict.OUTER_BY_OBSTRUCTION
    return ObstructionVerdict.INNER_BY_VANISHING


@dataclass
class WitnessProblem:
    """ad(lam) = D on all generators, as a linear system in lam's coordinates.

    Columns are candidate support monomials for lam (the vertex is
    excluded: ad_v = 0, so witnesses are canonical modulo v).  Each row
    states that the coefficient of one basis monomial in ad(lam)(x)
    equals its coefficient in D(x).
    """

    columns: list
    row_labels: list  # (generator letter, BasisMonomial)
    rows: list  # sparse rows: {column index: Fraction}
    rhs: list


@lru_cache(maxsize=None)
def _ad_columns(cfg: AlgebraConfig, max_len: int):
    """Commutator values of every candidate column monomial, plus the
    row index of every basis monomial they touch, per generator."""
    columns = [m for m in enumerate_basis(cfg, max_len) if m.kind != "vertex"]
    matrix_rows: dict[tuple, dict[int, Fraction]] = {}
    for col, mono in enumerate(columns):
        spelled = mono.spelled()
        for g in cfg.generators():
            value = (reduce_word(cfg, spelled + (g,))
                     - reduce_word(cfg, (g,) + spelled))
            for b, coeff in value:
                matrix_rows.setdefault((g, b), {})[col] = coeff
    row_labels = sorted(
        matrix_rows,
        key=lambda key: (_generator_order(cfg, key[0]), key[1].sort_key()))
    rows = [matrix_rows[key] for key in row_labels]
    return columns, row_labels, rows


def _generator_order(cfg: AlgebraConfig, g: int) -> int:
    return g - 1 if g > 0 else cfg.loops - g - 1


@lru_cache(maxsize=None)
def _ad_echelon(cfg: AlgebraConfig, max_len: int) -> Echelon:
    columns, _, rows = _ad_columns(cfg, max_len)
    return echelonize(rows, len(columns))


def build_witness_problem(spec: DerivationSpec, max_len: int) -> WitnessProblem:
    cfg = spec.cfg
    columns, row_labels, rows = _ad_columns(cfg, max_len)
    label_index = {label: i for i, label in enumerate(row_labels)}
    rows = [dict(r) for r in rows]
    labels = list(row_labels)
    rhs = [Fraction(0)] * len(labels)
    for g in cfg.generators():
        for b, coeff in spec.value(g):
            key = (g, b)
            if key in label_index:
                rhs[label_index[key]] = coeff
            else:
                # D reaches a monomial no candidate commutator can hit.
                labels.append(key)
                rows.append({})
                rhs.append(coeff)
    return WitnessProblem(list(columns), labels, rows, rhs)


def find_inner_witness(spec: DerivationSpec, max_len: int) -> Optional[Element]:
    """An element lam with ad(lam) = D, searched up to the length bound.

    Returns None when the system is inconsistent over that support; the
    answer is then a certificate of outerness only up to max_len.  Any
    returned witness is re-verified exactly on all generators.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if spec.relation_violations:
        raise ValueError("not a derivation: generator values violate the relations")
    cfg = spec.cfg
    columns, row_labels, _ = _ad_columns(cfg, max_len)
    label_index = {label: i for i, label in enumerate(row_labels)}
    rhs = [Fraction(0)] * len(row_labels)
    for g in cfg.generators():
        for b, coeff in spec.value(g):
            key = (g, b)
            if key not in label_index:
                return None
            rhs[label_index[key]] = coeff
    solution = solve_with(_ad_echelon(cfg, max_len), rhs)
    if solution is None:
        return None
    witness = Element(cfg, [(columns[c], x) for c, x in enumerate(solution) if x])
    if ad(cfg, witness) != spec:
        raise RuntimeError("witness failed re-verification; solver defect")
    return witness
