"""Shared fixtures: deterministic synthetic measurement days.

The generator uses a hand-rolled LCG instead of numpy's RNG so the fixture
bytes can never drift with library upgrades; golden outputs depend on it.
"""
import numpy as np
import pytest

from omcolors.ingest import TimeHeightSeries


def lcg_stream(seed: int = 123456789):
    m, a, c = 2 ** 31 - 1, 1103515245, 12345
    x = seed
    while True:
        x = (a * x + c) % m
        yield x / m


def synthetic_day(n: int = 100_000, seed: int = 123456789) -> TimeHeightSeries:
    """n points over 0-24 h and 0-12 km with values spanning 1e-8..1e-2."""
    g = lcg_stream(seed)
    t = np.empty(n)
    h = np.empty(n)
    v = np.empty(n)
    for i in range(n):
        t[i] = 24.0 * next(g)
        h[i] = 12.0 * next(g)
        v[i] = 10.0 ** (-8.0 + 6.0 * next(g) ** 0.7)
    # pin the exact extremes so the observed span is always (-8, -2)
    v[0] = 1e-8
    v[1] = 1e-2
    return TimeHeightSeries(
        time=t, height=h, value=v,
        mask=np.zeros(n, dtype=bool), mask_reasons=(None,) * n,
        metadata={"source": "synthetic", "variable": "value", "units": ""},
    )


def write_day_csv(path, n: int = 2000, seed: int = 20240601) -> None:
    """A small synthetic day as a CSV file, including a few bad rows."""
    g = lcg_stream(seed)
    lines = ["time,height,value"]
    for i in range(n):
        t = 24.0 * next(g)
        h = 12.0 * next(g)
        v = 10.0 ** (-8.0 + 6.0 * next(g) ** 0.7)
        if i == 0:
            v = 1e-8
        elif i == 1:
            v = 1e-2
        lines.append(f"{t:.6f},{h:.6f},{v:.8e}")
    lines.append("3.000000,5.000000,NaN")
    lines.append("4.000000,2.000000,-999")
    lines.append("5.000000,1.000000,-3.5e-4")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


@pytest.fixture(scope="session")
def big_day() -> TimeHeightSeries:
    return synthetic_day()


@pytest.fixture(scope="session")
def omc_m8_m2():
    from omcolors import build_omc

    return build_omc(-8, -2)


@pytest.fixture(scope="session")
def omc_sl_m8_m2():
    from omcolors import build_omc_sl

    return build_omc_sl(-8, -2)


@pytest.fixture()
def day_csv(tmp_path):
    path = tmp_path / "day.csv"
    write_day_csv(path)
    return path
