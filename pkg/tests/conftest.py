"""Shared fixtures: built graphs and scheme tables are expensive enough to
cache once per session."""

from __future__ import annotations

import pytest

from fermigraph import (build_hadamard_graph, build_hypercube, build_scheme,
                        paley, sylvester, terwilliger_basis)

_HAD_CACHE: dict[int, tuple] = {}
_CUBE_CACHE: dict[int, tuple] = {}
_PALEY_CACHE: dict[int, tuple] = {}


def hadamard_context(n: int):
    """(graph, tables, basis) for the Sylvester Hadamard graph of order n."""
    if n not in _HAD_CACHE:
        k = n.bit_length() - 1
        assert 2**k == n, "order must be a power of two"
        graph = build_hadamard_graph(sylvester(k))
        tables = build_scheme(graph)
        basis = terwilliger_basis(tables, base_vertex=0)
        _HAD_CACHE[n] = (graph, tables, basis)
    return _HAD_CACHE[n]


def paley_context(q: int):
    if q not in _PALEY_CACHE:
        graph = build_hadamard_graph(paley(q))
        tables = build_scheme(graph)
        basis = terwilliger_basis(tables, base_vertex=0)
        _PALEY_CACHE[q] = (graph, tables, basis)
    return _PALEY_CACHE[q]


def hypercube_context(dimension: int):
    if dimension not in _CUBE_CACHE:
        graph = build_hypercube(dimension)
        tables = build_scheme(graph)
        basis = terwilliger_basis(tables, base_vertex=0)
        _CUBE_CACHE[dimension] = (graph, tables, basis)
    return _CUBE_CACHE[dimension]


@pytest.fixture(scope="session")
def had4():
    return hadamard_context(4)


@pytest.fixture(scope="session")
def had2():
    return hadamard_context(2)


@pytest.fixture(scope="session")
def had8():
    return hadamard_context(8)


@pytest.fixture(scope="session")
def had16():
    return hadamard_context(16)
