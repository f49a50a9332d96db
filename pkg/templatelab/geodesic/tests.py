#  BSD 3-Clause License.
# 
#  Copyright (c) 2019-2024 Robert A. Milton. All rights reserved.
# 
#  Redistribution and use in source and binary forms, with or without modification, are permitted provided that the following conditions are met:
# 
#  1. Redistributions of source code must retain the above copyright notice, this list of conditions and the following disclaimer.
# 
#  2. Redistributions in binary form must reproduce the above copyright notice, this list of conditions and the following disclaimer in the
#     documentation and/or other materials provided with the distribution.
# 
#  3. Neither the name of the copyright holder nor the names of its contributors may be used to endorse or promote products derived from this
#     software without specific prior written permission.
# 
#  THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO,
#  THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
#  CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
#  PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
#  LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE,
#  EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.

""" Contains tests of the geodesic package."""

from __future__ import annotations

import math
import numpy as np
import pandas as pd
import pytest

from templatelab.base.classes import Report
from templatelab.planar.geometry import PlanarPoint, ORIGIN
from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec, expand_self_similar
from templatelab.develop.chains import SignSequence
from templatelab.selfsim.analysis import exact_tits_angle, triviality
from templatelab.geodesic.rays import TemplatePoint, FailureReason, CrossingTrace, ShotFailure, shoot
from templatelab.geodesic.boundary import boundary_interval, boundary_report, half_ray_arc, clip, directions_inside
from templatelab.geodesic.paths import (GeodesicResult, geodesic, distance, comparison_angle, tits_angle_estimate, canonical,
                                      horizon_schedule)
from templatelab.geodesic.oracle import stencil_offsets, MeshGraph, dijkstra_oracle
from templatelab.geodesic.experiments import (ClusterReport, three_wall_angle_bound, excess_bound, excess_check, cluster_excess_experiment,
                                              cluster_corollary_check, cluster_report, cluster_store)

CASE_I = SelfSimilarData(1.0, 1.0, math.tan(1.2), 1.0, math.tan(0.1))
TRIVIAL = SelfSimilarData(1.0, 1.0, 0.0, 1.0, 0.0)


def half(alphas, widths, epss) -> TemplateData:
    return TemplateData(TemplateData.Kind.HALF, (WallSpec(None),) + tuple(WallSpec(a) for a in alphas),
                        tuple(StripSpec(w, e) for w, e in zip(widths, epss)))


def finite(alphas, widths, epss) -> TemplateData:
    return TemplateData(TemplateData.Kind.FINITE, (WallSpec(None),) + tuple(WallSpec(a) for a in alphas) + (WallSpec(None),),
                        tuple(StripSpec(w, e) for w, e in zip(widths, epss)))


def from_psi(beta: float, psi0: float, psi1: float) -> SelfSimilarData:
    return SelfSimilarData(beta, 1.0, math.tan(psi0), 1.0, math.tan(psi1))


def sweep(seed: int = 7, size: int = 5) -> list:
    """ A seeded ``size^3`` grid of ``(beta, psi0, psi1)``, less the points within 0.05 of the boundary of A_beta."""
    rng = np.random.default_rng(seed)
    betas, psi0s, psi1s = (rng.uniform(lo, hi, size).tolist() for lo, hi in ((0.4, 2.7), (-1.2, 1.2), (-1.2, 1.2)))
    grid = [(beta, psi0, psi1) for beta in betas for psi0 in psi0s for psi1 in psi1s]
    return [point for point in grid if abs(triviality(from_psi(*point)).margin) >= 0.05]


SWEEP = sweep()


class TestShoot:

    def test_through_origin_is_degenerate(self):
        t = half((math.pi / 2,), (1.0,), (0.0,))
        result = shoot(t, ORIGIN, math.pi / 2, SignSequence((1,)), 1)
        assert isinstance(result, ShotFailure)
        assert result.wall == 1 and result.reason == FailureReason.ORIGIN_HIT and result.degenerate

    def test_diagonal_enters_wall(self):
        t = half((math.pi / 2,), (1.0,), (0.0,))
        result = shoot(t, ORIGIN, math.pi / 4, SignSequence(()), 1)
        assert isinstance(result, CrossingTrace)
        assert result.crossings[-1].entry.is_close(PlanarPoint(1, 1))
        assert result.crossings[-1].t_entry == pytest.approx(math.sqrt(2))
        assert result.locate(0.5 * math.sqrt(2)) == pytest.approx(TemplatePoint.on_strip(0, 0.5, 0.5))

    def test_diagonal_never_leaves_right_angle(self):
        t = half((math.pi / 2, math.pi / 2), (1.0, 1.0), (0.0, 0.0))
        result = shoot(t, ORIGIN, math.pi / 4, 'auto', 2)
        assert isinstance(result, ShotFailure) and result.wall == 1
        result = shoot(t, ORIGIN, math.pi / 4, SignSequence((1,)), 2)
        assert result.reason == FailureReason.BAND_NOT_CROSSED

    def test_backward_ray(self):
        t = half((1.0,), (1.0,), (0.0,))
        result = shoot(t, ORIGIN, -0.5, SignSequence(()), 1)
        assert result.reason == FailureReason.BACKWARD

    def test_rejects_bad_arguments(self):
        t = half((1.0,), (1.0,), (0.0,))
        with pytest.raises(ValueError):
            shoot(t, PlanarPoint(0, 1), 1.0, SignSequence(()), 1)
        with pytest.raises(ValueError):
            shoot(t, ORIGIN, 1.0, SignSequence(()), 2)
        with pytest.raises(ValueError):
            shoot(t, ORIGIN, 1.0, 'sometimes', 1)

    def test_inside_and_outside_the_cone(self):
        t = expand_self_similar(CASE_I, 42)
        estimate = boundary_interval(t, depth=40)
        widest = max(estimate.intervals, key=lambda interval: interval.width)
        inside = shoot(t, ORIGIN, 0.5 * (widest.lo + widest.hi), 'auto', 40)
        assert isinstance(inside, CrossingTrace) and inside.depth == 40
        times = [time for crossing in inside.crossings for time in (crossing.t_entry, crossing.t_exit) if not math.isnan(time)]
        assert times == sorted(times)
        assert isinstance(shoot(t, ORIGIN, 0.5 * (widest.lo + widest.hi), inside.cases, 40), CrossingTrace)
        assert isinstance(shoot(t, ORIGIN, estimate.intervals[0].lo - 0.05, 'auto', 40), ShotFailure)


class TestBoundary:

    def test_half_ray_arc(self):
        start, end = half_ray_arc(PlanarPoint(0, -1), ORIGIN, PlanarPoint(1, 0))
        assert start == pytest.approx(0.0) and end == pytest.approx(math.pi / 2)
        assert half_ray_arc(PlanarPoint(2, 0), ORIGIN, PlanarPoint(1, 0)) is None

    def test_clip_shifts_arcs(self):
        assert clip(3.0, 4.0, (-3.0, -2.0)) == pytest.approx((2.0 * math.pi - 3.0, 4.0))
        lo, hi = clip(0.0, 1.0, (2.0, 2.5))
        assert hi <= lo

    def test_rejects_shallow_depth(self):
        t = expand_self_similar(CASE_I, 10)
        with pytest.raises(ValueError):
            boundary_interval(t, depth=1)
        with pytest.raises(ValueError):
            boundary_interval(t, depth=10)

    def test_trivial_data_collapses(self):
        estimate = boundary_interval(expand_self_similar(TRIVIAL, 42), depth=40)
        assert estimate.theta_hi <= 1e-3
        assert 0.0 <= estimate.theta_lo <= estimate.theta_hi

    def test_converges_to_exact_angle(self):
        estimate = boundary_interval(expand_self_similar(CASE_I, 42), depth=40)
        exact = exact_tits_angle(CASE_I)
        assert estimate.theta_hi == pytest.approx(exact, abs=1e-3)
        assert estimate.theta_lo <= estimate.theta_hi
        assert estimate.midpoint == pytest.approx(exact, abs=1e-3)

    @pytest.mark.parametrize('beta, psi0, psi1', [(1.0, 0.0, 0.0), (2.0, -0.3, 0.4), (1.0, 1.2, 0.1), (0.6, 0.9, -0.2)] + SWEEP)
    def test_collapse_matches_verdict(self, beta, psi0, psi1):
        s = from_psi(beta, psi0, psi1)
        estimate = boundary_interval(expand_self_similar(s, 42), depth=40)
        assert (estimate.theta_hi < 1e-3) == triviality(s).trivial
        assert estimate.theta_hi == pytest.approx(exact_tits_angle(s), abs=1e-3)

    @pytest.mark.parametrize('seed', range(5))
    def test_angle_bound_and_nesting(self, seed, tmp_path):
        rng = np.random.default_rng(seed)
        alphas = [rng.uniform(0.6, 1.2) if rng.uniform() < 0.5 else rng.uniform(1.95, 2.55) for _ in range(29)]
        t = half(alphas, rng.uniform(0.5, 2.0, 29), rng.uniform(-1.0, 1.0, 29))
        frame = boundary_report(t, tmp_path / 'boundary.csv')
        assert list(frame.df['depth']) == list(range(2, 30))
        highs = list(frame.df['theta_hi'])
        assert all(later <= earlier + 1e-12 for earlier, later in zip(highs[:-1], highs[1:]))
        assert highs[-1] <= t.beta_max + 1e-9
        assert (frame.df['theta_lo'] <= frame.df['theta_hi']).all()

    def test_anchor_translates_chain(self):
        t = expand_self_similar(CASE_I, 22)
        anchored = t._replace(anchor=0.4)
        moved = t._replace(strips=(t.strips[0]._replace(eps=t.strips[0].eps + 0.4),) + t.strips[1:])
        estimate = boundary_interval(anchored, depth=20)
        reference = boundary_interval(moved, PlanarPoint(0.4, 0.0), depth=20)
        assert estimate.theta_lo == pytest.approx(reference.theta_lo, abs=1e-7)
        assert estimate.theta_hi == pytest.approx(reference.theta_hi, abs=1e-7)
        ray = shoot(anchored, ORIGIN, directions_inside(estimate, 1)[0], 'auto', 20)
        assert isinstance(ray, CrossingTrace)
        start = ray.locate(0.0)
        assert (start.index, start.s, start.h) == (0, pytest.approx(0.4), pytest.approx(0.0, abs=1e-12))

    def test_report_round_trip(self, tmp_path):
        t = expand_self_similar(CASE_I, 12)
        frame = boundary_report(t, tmp_path / 'boundary.csv', depths=[2, 5, 11])
        read = pd.read_csv(tmp_path / 'boundary.csv')
        assert list(read.columns) == ['depth', 'theta_lo', 'theta_hi', 'branches']
        assert list(read['depth']) == [2, 5, 11]
        assert read['theta_hi'].iloc[-1] == pytest.approx(boundary_interval(t, depth=11).theta_hi)


class TestGeodesic:

    def test_same_wall(self):
        t = finite((1.0,), (1.0, 1.0), (0.0, 0.0))
        result = geodesic(t, TemplatePoint.on_wall(1, 0.3, 0.2), TemplatePoint.on_wall(1, -0.5, 1.0))
        assert result.kind == GeodesicResult.Kind.STRAIGHT
        assert result.length == pytest.approx(math.hypot(0.8, 0.8))

    @pytest.mark.parametrize('h', [-0.5, 0.5])
    def test_adjacent_walls(self, h):
        t = finite((), (1.0,), (0.5,))
        result = geodesic(t, TemplatePoint.on_wall(0, 0.0, h), TemplatePoint.on_wall(1, 0.2, 0.3))
        assert result.kind == GeodesicResult.Kind.STRAIGHT
        assert result.length == pytest.approx(math.hypot(0.7, 1.8))
        assert result.point_at(result.length) == pytest.approx(TemplatePoint.on_wall(1, 0.2, 0.3))

    def test_bends_at_origin(self):
        t = finite((1.2,), (1.0, 1.0), (0.0, 0.0))
        result = geodesic(t, TemplatePoint.on_strip(0, 0.0, 0.2), TemplatePoint.on_strip(1, 0.0, 0.7))
        assert result.kind == GeodesicResult.Kind.BENT
        assert result.breakpoints == (TemplatePoint.on_wall(1),)
        assert result.length == pytest.approx(1.5)
        assert result.point_at(1.1) == pytest.approx(TemplatePoint.on_strip(1, 0.0, 0.3), abs=1e-9)

    def test_canonical_moves_boundary_points(self):
        t = finite((1.2,), (1.0, 1.0), (0.0, 0.5))
        assert canonical(t, TemplatePoint.on_strip(1, 2.0, 0.0)) == pytest.approx(TemplatePoint.on_wall(1, 2 * math.cos(1.2), 2 * math.sin(1.2)))
        assert canonical(t, TemplatePoint.on_strip(1, 2.0, 1.0)) == pytest.approx(TemplatePoint.on_wall(2, 1.5, 0.0))

    def test_unlocatable_point(self):
        t = finite((1.2,), (1.0, 1.0), (0.0, 0.0))
        with pytest.raises(ValueError):
            geodesic(t, TemplatePoint.on_wall(5), TemplatePoint.on_wall(0))
        with pytest.raises(ValueError):
            geodesic(t, TemplatePoint.on_strip(0, 0.0, 2.0), TemplatePoint.on_wall(0))

    def test_anchor_moves_wall_zero(self):
        t = finite((1.0, 2.0), (1.0, 0.5, 1.5), (0.3, -0.4, 0.6))
        anchored, moved = t._replace(anchor=0.5), finite((1.0, 2.0), (1.0, 0.5, 1.5), (0.8, -0.4, 0.6))
        rng = np.random.default_rng(5)
        for _ in range(10):
            x, y = random_point(t, rng), random_point(t, rng)
            assert distance(anchored, x, y) == pytest.approx(distance(moved, x, y), abs=1e-9)
        x, y = TemplatePoint.on_wall(0, 0.2, -0.3), TemplatePoint.on_strip(1, 0.1, 0.25)
        assert distance(anchored, x, y) != pytest.approx(distance(t, x, y), abs=1e-3)
        glued = canonical(anchored, TemplatePoint.on_strip(0, 0.9, 1.0))
        assert (glued.piece, glued.index, glued.s) == (TemplatePoint.on_wall(1).piece, 1, pytest.approx(0.1))
        assert dijkstra_oracle(anchored, x, y, 0.05) == pytest.approx(distance(anchored, x, y), rel=0.04, abs=0.05)

    def test_metric_axioms(self):
        t = finite((1.0, 2.0, 1.4), (1.0, 0.5, 1.5, 0.8), (0.3, -0.4, 0.0, 0.6))
        rng = np.random.default_rng(3)
        points = [random_point(t, rng) for _ in range(7)]
        d = np.array([[distance(t, x, y) for y in points] for x in points])
        assert d == pytest.approx(d.T, abs=2e-9)
        assert np.allclose(np.diag(d), 0.0)
        for j in range(len(points)):
            assert (d <= d[:, [j]] + d[[j], :] + 2e-9).all()

    def test_excess_inequality(self):
        t = finite((1.0, 2.0), (1.0, 0.5, 1.5), (0.3, -0.4, 0.6))
        rng = np.random.default_rng(11)
        for _ in range(200):
            check = excess_check(t, *(random_point(t, rng) for _ in range(3)), slack=1e-6)
            assert check.holds
            assert check.gap <= check.bound + 1e-6

    def test_excess_bound(self):
        assert excess_bound(2.0, 4.0) == pytest.approx(math.sqrt(8.0))
        assert excess_bound(3.0, 1.0) <= math.sqrt(3.0)
        assert excess_bound(2.0, 0.0) == 0.0


def random_point(t: TemplateData, rng: np.random.Generator) -> TemplatePoint:
    index = int(rng.integers(0, len(t.strips)))
    if rng.uniform() < 0.5:
        return TemplatePoint.on_strip(index, rng.uniform(-1.0, 1.0), rng.uniform(0.05, 0.95) * t.strips[index].width)
    return TemplatePoint.on_wall(index, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))


class TestAngles:

    def test_equilateral(self):
        t = finite((1.0,), (1.0, 1.0), (0.0, 0.0))
        angle = comparison_angle(t, TemplatePoint.on_wall(1), TemplatePoint.on_wall(1, 1.0), TemplatePoint.on_wall(1, 0.5, math.sqrt(3) / 2))
        assert angle == pytest.approx(math.pi / 3)

    def test_on_segment(self):
        t = finite((1.0,), (1.0, 1.0), (0.0, 0.0))
        assert comparison_angle(t, TemplatePoint.on_wall(1), TemplatePoint.on_wall(1, 1.0), TemplatePoint.on_wall(1, 0.5)) == pytest.approx(0.0)
        with pytest.raises(ValueError):
            comparison_angle(t, TemplatePoint.on_wall(1), TemplatePoint.on_wall(1), TemplatePoint.on_wall(1, 0.5))

    def test_three_wall_bound(self):
        assert three_wall_angle_bound(half((1.0, 2.5), (1.0, 1.0), (0.0, 0.0))) == pytest.approx(math.pi - (math.pi - 2.5))

    def test_identical_rays(self):
        t = expand_self_similar(CASE_I, 22)
        estimate = boundary_interval(t, depth=20)
        ray = shoot(t, ORIGIN, directions_inside(estimate, 1)[0], 'auto', 20)
        assert tits_angle_estimate(t, ray, ray, 10.0) == pytest.approx(0.0, abs=1e-9)

    def test_estimate_is_monotone_and_bounded(self):
        t = expand_self_similar(CASE_I, 22)
        estimate = boundary_interval(t, depth=20)
        widest = max(estimate.intervals, key=lambda interval: interval.width)
        theta1, theta2 = widest.lo + 0.25 * widest.width, widest.lo + 0.75 * widest.width
        ray1, ray2 = (shoot(t, ORIGIN, theta, 'auto', 20) for theta in (theta1, theta2))
        estimates = [tits_angle_estimate(t, ray1, ray2, horizon) for horizon in horizon_schedule(20.0, 3)]
        assert all(later >= earlier - 1e-9 for earlier, later in zip(estimates[:-1], estimates[1:]))
        assert theta2 - theta1 - 1e-9 <= estimates[0]
        assert estimates[-1] <= min(exact_tits_angle(CASE_I) + 1e-3, three_wall_angle_bound(t) + 1e-9)

    def test_horizon_beyond_trace(self):
        t = expand_self_similar(CASE_I, 6)
        estimate = boundary_interval(t, depth=4)
        ray = shoot(t, ORIGIN, directions_inside(estimate, 1)[0], 'auto', 4)
        with pytest.raises(ValueError):
            tits_angle_estimate(t, ray, ray, 1e6)


class TestOracle:

    def test_stencil(self):
        assert len(stencil_offsets(1)) == 4
        assert len(stencil_offsets(3)) == 16

    def test_same_wall(self):
        t = finite((), (1.0,), (0.0,))
        x, y = TemplatePoint.on_wall(0, -0.5, 0.0), TemplatePoint.on_wall(0, 0.3, 0.6)
        assert dijkstra_oracle(t, x, y, 0.025, radius=1.0) == pytest.approx(1.0, rel=0.02)

    def test_straight_pair(self):
        t = finite((), (1.0,), (0.5,))
        x, y = TemplatePoint.on_wall(0, 0.0, -0.5), TemplatePoint.on_wall(1, 0.2, 0.3)
        length = geodesic(t, x, y).length
        assert dijkstra_oracle(t, x, y, 0.05, radius=2.0) == pytest.approx(length, rel=0.03)

    def test_bent_pair(self):
        t = finite((1.2,), (1.0, 1.0), (0.0, 0.0))
        x, y = TemplatePoint.on_strip(0, 0.0, 0.2), TemplatePoint.on_strip(1, 0.0, 0.7)
        length = geodesic(t, x, y).length
        assert abs(dijkstra_oracle(t, x, y, 0.05, radius=2.0) - length) <= 3 * 0.05 * length

    def test_radius_too_small(self):
        t = finite((), (1.0,), (0.0,))
        with pytest.raises(ValueError, match='radius'):
            dijkstra_oracle(t, TemplatePoint.on_wall(0, 3.0, 0.0), TemplatePoint.on_wall(1), 0.1, radius=1.0)
        with pytest.raises(ValueError):
            MeshGraph(t, 0.0)

    def test_attach_joins_the_grid(self):
        t = finite((), (1.0,), (0.0,))
        mesh = MeshGraph(t, 0.1, radius=2.0)
        key = mesh.attach(TemplatePoint.on_wall(0, 0.33, -0.21))
        assert mesh.graph.degree(key) > 0
        assert mesh.attach(TemplatePoint.on_wall(0, 0.33, -0.21)) == key
        assert mesh.distance(TemplatePoint.on_wall(0, -0.5, -0.5), TemplatePoint.on_wall(0, 0.5, -0.5)) == pytest.approx(1.0, rel=1e-6)

    @pytest.mark.parametrize('seed', range(16))
    def test_matches_geodesic_on_random_templates(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 4))
        t = finite(rng.uniform(0.5, 2.6, n), rng.uniform(0.2, 0.6, n + 1), rng.uniform(-0.3, 0.3, n + 1))
        x, y = random_point(t, rng), random_point(t, rng)
        length = geodesic(t, x, y).length
        mesh = dijkstra_oracle(t, x, y, 0.07)
        assert mesh >= length - 1e-6
        assert mesh == pytest.approx(length, rel=0.04, abs=0.07)


def cluster_template() -> TemplateData:
    return finite([1.0 if k % 2 else 2.0 for k in range(10)], [0.02] * 11, [0.0] * 11)


def random_cluster(rng: np.random.Generator) -> TemplateData:
    """ Ten interior walls alternating near 2 and 1, every origin within 0.3 of the origin of wall 1."""
    alphas = [rng.uniform(0.8, 1.2) if k % 2 else rng.uniform(1.9, 2.3) for k in range(10)]
    return finite(alphas, rng.uniform(0.01, 0.025, 11), rng.uniform(-0.005, 0.005, 11))


class TestCluster:

    @pytest.mark.parametrize('seed', range(20))
    def test_excess_is_positive(self, seed):
        t = random_cluster(np.random.default_rng(seed))
        report = cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 1.2, samples=3, mesh_step=0.1, seed=seed,
                                           stencil=2)
        assert report.n_span == 8
        assert report.excess > 0.0
        assert report.normalized_excess >= 0.05

    def test_report(self, tmp_path):
        t = cluster_template()
        report = cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 1.2, samples=1, mesh_step=0.1, stencil=2)
        frame = cluster_report([report], tmp_path / 'cluster.csv')
        assert list(pd.read_csv(frame.path).columns) == ['n_span', 'R_prime', 'excess', 'normalized_excess']

    def test_corollary(self):
        t = cluster_template()
        report = cluster_corollary_check(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 1.2, samples=5, mesh_step=0.1, stencil=2)
        assert 0.0 <= report.multiplier <= 1.2 / 0.3

    def test_infeasible(self):
        t = finite((1.0, 2.0, 1.0, 2.0), (1.0,) * 5, (0.0,) * 5)
        with pytest.raises(ValueError, match='Infeasible'):
            cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.5, (1, 5), 0.5, samples=0, mesh_step=0.5, n1=1.0)
        with pytest.raises(ValueError):
            cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.5, (1, 5), 0.2)

    def test_multiplier_is_enforced(self):
        t = cluster_template()
        with pytest.raises(ValueError, match='n1'):
            cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 0.9, samples=0)
        with pytest.raises(ValueError, match='n1'):
            cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 0.9, samples=0, n1=2.5)
        with pytest.raises(ValueError, match='n1'):
            cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 1.2, samples=0, n1=0.5)
        report = cluster_excess_experiment(t, TemplatePoint.on_wall(1), 0.3, (2, 10), 0.9, samples=0, mesh_step=0.1, stencil=2, n1=3.0)
        assert report.R_prime == 0.9 and report.excess >= 0.0

    def test_store(self, tmp_path):
        reports = [ClusterReport(8, 1.2, 0.6, 0.0625), ClusterReport(8, 2.4, 1.0, 0.052)]
        report = cluster_store(reports, tmp_path / 'cluster', {'seed': 4})
        assert Report(tmp_path / 'cluster').meta == {'n1': 4.0, 'seed': 4, 'min_normalized_excess': 0.052}
        assert report.frame('cluster').df['R_prime'].tolist() == [1.2, 2.4]
        with pytest.raises(ValueError):
            cluster_store([], tmp_path / 'empty', {})
