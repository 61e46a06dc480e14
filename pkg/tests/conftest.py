from dataclasses import dataclass

import pytest

from monpoincare.core import MonomialIdeal, Multidegree, mdeg_add, total_degree
from monpoincare.resolution import golod_series_match, resolve_residue_field
from monpoincare.series import BigradedSeries, denominator_from_poincare

from helpers import random_corpus


@dataclass
class CorpusEntry:
    ideal: MonomialIdeal
    top: Multidegree
    degree: int  # total degree of m_I
    P: BigradedSeries  # Poincare series to t-degree max(6, degree + 2)
    Q: BigradedSeries  # denominator, polynomial part
    golod: bool  # certificate at tmax = degree + 2
    generic: bool


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture(scope="session")
def corpus_data(corpus):
    """One resolution per corpus ideal, shared by the acceptance criteria."""
    from monpoincare.core import is_generic

    entries = []
    for ideal in corpus:
        top = ideal.top_lcm()
        degree = total_degree(top)
        tmax = max(6, degree + 2)
        bound = mdeg_add(top, (1,) * ideal.num_vars)
        P = resolve_residue_field(ideal, tmax, bound).poincare_series()
        entries.append(CorpusEntry(
            ideal=ideal,
            top=top,
            degree=degree,
            P=P,
            Q=denominator_from_poincare(P, ideal),
            golod=golod_series_match(P.restrict(degree + 2, bound), ideal),
            generic=is_generic(ideal),
        ))
    return entries
