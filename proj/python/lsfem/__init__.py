"""Least-squares finite element methods for 2D elliptic PDEs in
non-divergence form: meshes, benchmark problems, solvers, error estimation,
and convergence studies."""

from ._core import (
    Mesh,
    benchmark_names,
    bisect,
    fit_rate,
    make_initial_mesh,
    run_study,
    solve_level,
    uniform_refine,
)

__all__ = [
    "Mesh",
    "benchmark_names",
    "bisect",
    "fit_rate",
    "make_initial_mesh",
    "run_study",
    "solve_level",
    "uniform_refine",
]
