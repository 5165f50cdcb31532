"""Loaders and metadata for the shipped DSL corpus."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import dsl
from .functional_eval import Functional2, SeqFunctional
from .realfn import RealFunction


@dataclass(frozen=True)
class CorpusItem:
    """One shipped functional with the depth schedule that certifies it.

    `start_depth` is chosen so the doubling search meets the functional's
    true behaviour before stabilizing (a too-small start can stabilize on a
    shallow restriction; the expected modulus below is always the one
    certified by the stated schedule and confirmed by brute force at twice
    the certifying depth).
    """

    name: str
    start_depth: int
    expected_modulus: int


CORPUS: tuple[CorpusItem, ...] = (
    CorpusItem("c0", 4, 0),
    CorpusItem("c7", 4, 0),
    CorpusItem("first", 4, 1),
    CorpusItem("pair_sum", 4, 2),
    CorpusItem("triple_sum", 4, 3),
    CorpusItem("probe3", 4, 4),
    CorpusItem("branch", 4, 3),
    CorpusItem("parity5", 4, 5),
    CorpusItem("scale", 4, 5),
    CorpusItem("probe5x", 4, 6),
    CorpusItem("first_one", 4, 7),
    CorpusItem("packed", 4, 8),
    CorpusItem("window", 5, 9),
    CorpusItem("deep_pair", 5, 10),
)

TREE_FIXTURES = ("tree_height2", "tree_height5", "tree_empty", "tree_left",
                 "tree_zeros")
PREDICATE_FIXTURES = ("pred_zero", "pred_ge_first", "pred_ge_sum2",
                      "pred_ge_weight")
SEQ_FIXTURES = ("lam_const", "lam_ident", "lam_even", "lam_sum2", "lam_shift")


def _read(name: str) -> str:
    return resources.files("cantorkit").joinpath("data", name).read_text()


@lru_cache(maxsize=None)
def corpus_program() -> dsl.DslProgram:
    return dsl.parse(_read("corpus.fn"))


@lru_cache(maxsize=None)
def reals_program() -> dsl.DslProgram:
    return dsl.parse(_read("reals.fn"))


@lru_cache(maxsize=None)
def fixtures_program() -> dsl.DslProgram:
    return dsl.parse(_read("fixtures.fn"))


def corpus_functional(name: str) -> Functional2:
    return Functional2.from_dsl(corpus_program()[name])


def fixture_functional(name: str) -> Functional2:
    return Functional2.from_dsl(fixtures_program()[name])


def fixture_seq(name: str) -> SeqFunctional:
    return SeqFunctional.from_dsl(fixtures_program()[name])


def real_function(name: str) -> RealFunction:
    return RealFunction.from_dsl(reals_program()[name])
