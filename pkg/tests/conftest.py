"""Shared generators for the seeded random suites."""

from fractions import Fraction

from leavitt import AlgebraConfig, Element, complete_from_edge_values, reduce_word


def random_word(rng, cfg: AlgebraConfig, max_len: int, include_vertex=True):
    alphabet = [i for k in cfg.edge_indices() for i in (k, -k)]
    if include_vertex:
        alphabet.append(0)
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_element(rng, cfg: AlgebraConfig, max_terms=3, max_word_len=3) -> Element:
    total = Element.zero(cfg)
    for _ in range(rng.randint(1, max_terms)):
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        word = random_word(rng, cfg, max_word_len, include_vertex=False)
        total = total + coeff * reduce_word(cfg, word)
    return total


def random_derivation(rng, cfg: AlgebraConfig, max_word_len=3):
    values = [random_element(rng, cfg, max_word_len=max_word_len)
              for _ in cfg.edge_indices()]
    return complete_from_edge_values(cfg, values)
