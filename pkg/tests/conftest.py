"""Shared small systems for the test suite."""

import random

import pytest

from superdirac.golden import preset
from superdirac.pvsa import PVSAContext, free_pvsa, make_affine_pvsa
from superdirac.scalars import Scalar
from superdirac.series import Series
from superdirac.susy import SusyContext, make_affine_susy


def _lser(alg, exps, coeff):
    return Series(alg, ("l",), {exps: coeff})


def _complete(spec, names, vars_):
    """Fill the missing generator pairs of a bracket table with zero."""
    out = dict(spec)
    for a in names:
        for b in names:
            out.setdefault((a, b), lambda al: Series.zero(al, vars_))
    return out


def local_system():
    """p, q, u even and s, t odd with {q L p} = 1, {u L u} = k L, {s L t} = 1."""
    k = Scalar.param("k")
    alg, tab = free_pvsa([("p", 0), ("q", 0), ("u", 0), ("s", 1), ("t", 1)], _complete({
        ("q", "p"): lambda a: _lser(a, (0,), a.one()),
        ("p", "q"): lambda a: _lser(a, (0,), -a.one()),
        ("u", "u"): lambda a: _lser(a, (1,), a.const(k)),
        ("s", "t"): lambda a: _lser(a, (0,), a.one()),
        ("t", "s"): lambda a: _lser(a, (0,), a.one()),
    }, "pqust", ("l",)))
    ctx = PVSAContext(alg, tab)
    g = alg.gen
    thetas = [g("q") + g("u") * g("u"), g("p"), g("s") + g("u") * g("t"), g("t")]
    return ctx, thetas


def canonical_pair():
    """Free algebra on p, q with {q L p} = 1 and {p L p} = k L."""
    k = Scalar.param("k")
    alg, tab = free_pvsa([("p", 0), ("q", 0)], _complete({
        ("q", "p"): lambda a: _lser(a, (0,), a.one()),
        ("p", "q"): lambda a: _lser(a, (0,), -a.one()),
        ("p", "p"): lambda a: _lser(a, (1,), a.const(k)),
    }, "pq", ("l",)))
    ctx = PVSAContext(alg, tab)
    return ctx, [alg.gen("p"), alg.gen("q")]


def susy_system(with_u=True):
    """a even, b and u odd with {a L b} = 1, {b L a} = -1, {u L u} = k X;
    without u the algebra is generated by a and b."""
    k = Scalar.param("k")
    vars_ = ("l", "x")
    gens = [("a", 0), ("b", 1), ("u", 1)] if with_u else [("a", 0), ("b", 1)]
    spec = {
        ("a", "b"): lambda al: Series(al, vars_, {(0, 0): al.one()}),
        ("b", "a"): lambda al: Series(al, vars_, {(0, 0): -al.one()}),
    }
    if with_u:
        spec[("u", "u")] = lambda al: Series(al, vars_, {(0, 1): al.const(k)})
    alg, tab = free_pvsa(gens, _complete(spec, [n for n, _ in gens], vars_), kind="odd")
    return SusyContext(alg, tab, name="susy-toy")


@pytest.fixture(scope="session")
def sl2():
    return preset("sl2")


@pytest.fixture(scope="session")
def osp12():
    return preset("osp12")


@pytest.fixture(scope="session")
def sl2_ctx(sl2):
    return make_affine_pvsa(sl2)


@pytest.fixture(scope="session")
def osp_ctx(osp12):
    return make_affine_pvsa(osp12)


@pytest.fixture(scope="session")
def osp_susy_ctx(osp12):
    return make_affine_susy(osp12)


@pytest.fixture
def rng():
    return random.Random(2024)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
