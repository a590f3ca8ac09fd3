"""Brute-force validation of the rewriting system.

`exhaustive_reduce` rewrites a word by applying rule instances in a
seed-determined random order instead of the deterministic leftmost
strategy of `algebra.reduce_word`.  If the rule system is confluent the
two must agree on every word and every seed; the test suites check this
on thousands of random words.

`check_overlaps` resolves every critical pair that fits in a length-3
window (all rule left-hand sides have length 2) both ways and reports
any disagreement; an empty report is the desk-scale confluence check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    VERTEX,
    AlgebraConfig,
    BasisMonomial,
    Element,
    reduce_word,
)
from .derivation import Violation, ViolationReport

STEP_BUDGET = 10 ** 6

# Rule ids follow the relation list of the presentation:
#   1: vv -> v        2: ve -> e, ev -> e      3: ve* -> e*, e*v -> e*
#   4: e_i* e_j -> delta_ij v                  5: e_1 e_1* -> v - sum_{k>=2} e_k e_k*


@dataclass(frozen=True)
class RuleApplication:
    rule_id: int
    position: int
    replacement: tuple  # tuple of (coeff, letters) pairs spliced in place


def applicable_rules(cfg: AlgebraConfig, word: tuple) -> list[RuleApplication]:
    apps = []
    for t in range(len(word) - 1):
        a, b = word[t], word[t + 1]
        if a == VERTEX and b == VERTEX:
            apps.append(RuleApplication(1, t, ((1, (VERTEX,)),)))
        elif a == VERTEX and b > 0:
            apps.append(RuleApplication(2, t, ((1, (b,)),)))
        elif a > 0 and b == VERTEX:
            apps.append(RuleApplication(2, t, ((1, (a,)),)))
        elif a == VERTEX and b < 0:
            apps.append(RuleApplication(3, t, ((1, (b,)),)))
        elif a < 0 and b == VERTEX:
            apps.append(RuleApplication(3, t, ((1, (a,)),)))
        elif a < 0 < b:
            repl = ((1, (VERTEX,)),) if a == -b else ()
            apps.append(RuleApplication(4, t, repl))
        elif a == 1 and b == -1:
            repl = [(1, (VERTEX,))]
            repl.extend((-1, (k, -k)) for k in range(2, cfg.loops + 1))
            apps.append(RuleApplication(5, t, tuple(repl)))
    return apps


def apply_rule(word: tuple, app: RuleApplication) -> list[tuple[Fraction, tuple]]:
    head, tail = word[:app.position], word[app.position + 2:]
    return [(Fraction(c), head + body + tail) for c, body in app.replacement]


def _irreducible_to_monomial(cfg: AlgebraConfig, word: tuple) -> BasisMonomial:
    if word in ((), (VERTEX,)):
        return BasisMonomial()
    split = next((k for k, g in enumerate(word) if g < 0), len(word))
    mono = BasisMonomial(word[:split], tuple(-d for d in reversed(word[split:])))
    if VERTEX in word or any(g > 0 for g in word[split:]) or (
            mono.w and mono.h
            and mono.w[-1] == cfg.special_index and mono.h[-1] == cfg.special_index):
        raise RuntimeError(f"word {word!r} is irreducible but not basic")
    return mono


def exhaustive_reduce(cfg: AlgebraConfig, word, rng_seed: int) -> Element:
    """Fully rewrite a word, choosing rule applications at random.

    Deterministic per seed.  Raises RuntimeError if the step budget is
    exceeded, which would indicate a nontermination defect.
    """
    word = cfg.check_word(word)
    rng = random.Random(rng_seed)
    combination: dict[tuple, Fraction] = {word: Fraction(1)}
    steps = 0
    while True:
        choices = []
        for w in sorted(combination):
            choices.extend((w, app) for app in applicable_rules(cfg, w))
        if not choices:
            break
        steps += 1
        if steps > STEP_BUDGET:
            raise RuntimeError(
                f"rewrite step budget {STEP_BUDGET} exceeded on {word!r}")
        w, app = rng.choice(choices)
        coeff = combination.pop(w)
        for c, new_word in apply_rule(w, app):
            acc = combination.get(new_word, 0) + coeff * c
            if acc:
                combination[new_word] = acc
            else:
                del combination[new_word]
    return Element(cfg, [
        (_irreducible_to_monomial(cfg, w), c) for w, c in combination.items()])


def check_overlaps(cfg: AlgebraConfig) -> ViolationReport:
    """Resolve all two-rule overlaps in length-<=3 words both ways.

    Every left-hand side has two letters, so any overlap of two distinct
    rule instances fits in three letters.  Each side of the overlap is
    applied and the results are brought to normal form with the
    deterministic reducer; both sides must also agree with reducing the
    word directly.
    """
    alphabet = [VERTEX]
    for i in cfg.edge_indices():
        alphabet += [i, -i]
    found = []
    for length in (2, 3):
        for word in itertools.product(alphabet, repeat=length):
            apps = applicable_rules(cfg, word)
            for a, b in itertools.combinations(apps, 2):
                if abs(a.position - b.position) > 1:
                    continue
                direct = reduce_word(cfg, word)
                via_a = _resolve(cfg, word, a)
                via_b = _resolve(cfg, word, b)
                for tag, result in (("first", via_a), ("second", via_b)):
                    if result != direct:
                        found.append(Violation(
                            "overlap",
                            (word, (a.rule_id, a.position), (b.rule_id, b.position), tag),
                            result - direct))
    return ViolationReport(tuple(found))


def _resolve(cfg: AlgebraConfig, word: tuple, app: RuleApplication) -> Element:
    total = Element.zero(cfg)
    for coeff, new_word in apply_rule(word, app):
        total = total + coeff * reduce_word(cfg, new_word)
    return total
