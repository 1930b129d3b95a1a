// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/metrics.hpp"
#include "vrcontour/report.hpp"

using namespace vrc;

namespace {

Vec3 yaw(double degrees) {
  const double r = degrees * std::numbers::pi / 180.0;
  return {std::sin(r), 0.0, std::cos(r)};
}

SessionEvent gaze_event(double t, Vec3 dir, GazeHit hit) {
  SessionEvent e = make_event(t, EventKind::Gaze);
  e.gaze = GazeSample{t, dir, hit};
  return e;
}

SessionRecord basic_session(double anchor, double first_stroke, double end) {
  SessionRecord s;
  s.anchor_ms = anchor;
  s.events.push_back(make_event(first_stroke, EventKind::StrokeStart));
  s.events.push_back(make_event(first_stroke + 100, EventKind::StrokeEnd));
  s.events.push_back(make_event(end, EventKind::End));
  return s;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Dice, Examples) {
  LabelVolume a({4, 4, 2}), b({4, 4, 2});
  EXPECT_DOUBLE_EQ(dsc(a, b), 1.0);
  a.set(0, 0, 0, true);
  EXPECT_DOUBLE_EQ(dsc(a, b), 0.0);
  b.set(0, 0, 0, true);
  EXPECT_DOUBLE_EQ(dsc(a, b), 1.0);
  b.set(1, 0, 1, true);
  EXPECT_DOUBLE_EQ(dsc(a, b), 2.0 / 3.0);
  EXPECT_THROW(dsc(a, LabelVolume({4, 4, 3})), Error);
}

TEST(Dice, HalfOverlapOnAPlane) {
  LabelVolume a({10, 10, 3}), b({10, 10, 3});
  for (int x = 0; x < 6; ++x) a.set(x, 0, 1, true);
  for (int x = 3; x < 9; ++x) b.set(x, 0, 1, true);
  EXPECT_DOUBLE_EQ(dsc(a, b), 0.5);
}

TEST(Dice, MatchesSetOracleSymmetricAndBounded) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Dims d{1 + trial % 7, 1 + trial % 5, 1 + trial % 4};
    const LabelVolume a = oracle::random_mask(rng, d, dens(rng));
    const LabelVolume b = oracle::random_mask(rng, d, dens(rng));
    const double s = dsc(a, b);
    EXPECT_NEAR(s, oracle::naive_dsc(a, b), 1e-12);
    EXPECT_EQ(s, dsc(b, a));
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    EXPECT_EQ(dsc(a, a), 1.0);
  }
}

TEST(Dice, InvariantToSliceOrder) {
  std::mt19937_64 rng(101);
  const Dims d{8, 7, 9};
  const LabelVolume a = oracle::random_mask(rng, d, 0.3);
  const LabelVolume b = oracle::random_mask(rng, d, 0.6);
  std::vector<int> order(static_cast<std::size_t>(d.nz));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  LabelVolume sa(d), sb(d);
  for (int z = 0; z < d.nz; ++z) {
    Mask2D pa = mask_slice(a, Axis::Transverse, order[static_cast<std::size_t>(z)]);
    Mask2D pb = mask_slice(b, Axis::Transverse, order[static_cast<std::size_t>(z)]);
    pa.index = pb.index = z;
    write_slice(sa, pa);
    write_slice(sb, pb);
  }
  EXPECT_DOUBLE_EQ(dsc(sa, sb), dsc(a, b));
}

TEST(Temporal, FromAnchor) {
  const TemporalMetrics m = temporal_metrics(basic_session(1000, 4000, 61000));
  EXPECT_DOUBLE_EQ(m.initial_exploration_ms, 3000);
  EXPECT_DOUBLE_EQ(m.overall_tct_ms, 60000);
}

TEST(Temporal, IncompleteSessions) {
  SessionRecord no_stroke;
  no_stroke.anchor_ms = 0;
  no_stroke.events.push_back(make_event(10, EventKind::End));
  EXPECT_EQ(code_of([&] { temporal_metrics(no_stroke); }), ErrorCode::NoStroke);
  SessionRecord no_end = basic_session(0, 10, 20);
  no_end.events.pop_back();
  EXPECT_EQ(code_of([&] { temporal_metrics(no_end); }), ErrorCode::NoSessionEnd);
  SessionRecord no_anchor = basic_session(0, 10, 20);
  no_anchor.anchor_ms.reset();
  EXPECT_THROW(temporal_metrics(no_anchor), Error);
}

TEST(Temporal, ShiftInvariant) {
  for (double shift : {-500.0, 0.0, 12345.0}) {
    const TemporalMetrics m = temporal_metrics(basic_session(100 + shift, 900 + shift, 5100 + shift));
    EXPECT_DOUBLE_EQ(m.initial_exploration_ms, 800);
    EXPECT_DOUBLE_EQ(m.overall_tct_ms, 5000);
  }
}

TEST(Gaze, AngularSpeed) {
  EXPECT_NEAR(angular_speed({0, yaw(0), GazeHit::None}, {100, yaw(10), GazeHit::None}), 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(angular_speed({0, {1, 0, 0}, GazeHit::None}, {600, {0, 1, 0}, GazeHit::None}), 150.0);
  EXPECT_EQ(code_of([] { angular_speed({5, yaw(0), GazeHit::None}, {5, yaw(1), GazeHit::None}); }),
            ErrorCode::NonIncreasingTime);
}

TEST(Gaze, ThresholdIsInclusive) {
  const std::vector<GazeSample> g{{0, {1, 0, 0}, GazeHit::Tablet}, {600, {0, 1, 0}, GazeHit::Tablet},
                                  {700, {0, 1, 0}, GazeHit::Volume}};
  const auto kept = filter_saccades(g);
  ASSERT_EQ(kept.size(), 2U);
  EXPECT_EQ(kept[0], g[0]);
  EXPECT_EQ(kept[1], g[2]);
}

TEST(Gaze, FilterMatchesPairwiseLoop) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> deg(-30.0, 30.0), dt(5.0, 50.0);
  std::vector<GazeSample> g;
  double t = 0;
  for (int i = 0; i < 2000; ++i) {
    t += dt(rng);
    g.push_back({t, yaw(deg(rng) * (i % 3 == 0 ? 1.0 : 0.05)), i % 2 ? GazeHit::Tablet : GazeHit::Volume});
  }
  for (double threshold : {50.0, 150.0, 400.0}) {
    const auto kept = filter_saccades(g, threshold);
    const auto idx = oracle::saccade_keep(g, threshold);
    ASSERT_EQ(kept.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(kept[i], g[idx[i]]);
  }
}

TEST(Gaze, KeptSamplesAreAnOrderedSubsequenceAndGrowWithThreshold) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> deg(-40.0, 40.0);
  std::vector<GazeSample> g;
  for (int i = 0; i < 500; ++i) g.push_back({i * 20.0, yaw(deg(rng) * 0.2), GazeHit::Tablet});
  std::size_t prev = 0;
  for (double threshold : {10.0, 50.0, 100.0, 150.0, 300.0, 1e9}) {
    const auto kept = filter_saccades(g, threshold);
    EXPECT_GE(kept.size(), prev);
    prev = kept.size();
    EXPECT_EQ(kept.front(), g.front());
    for (std::size_t i = 1; i < kept.size(); ++i) EXPECT_LT(kept[i - 1].t_ms, kept[i].t_ms);
  }
  EXPECT_EQ(prev, g.size());
}

TEST(Attention, WindowsSplitByTct) {
  SessionRecord s = basic_session(0, 100, 1000);
  std::vector<GazeSample> g;
  g.push_back({0, yaw(0), GazeHit::Tablet});
  g.push_back({5, yaw(0), GazeHit::Volume});
  g.push_back({9.99, yaw(0), GazeHit::None});
  g.push_back({10, yaw(0), GazeHit::Volume});
  g.push_back({999, yaw(0), GazeHit::Tablet});
  g.push_back({1000, yaw(0), GazeHit::Tablet});
  const AttentionSeries a = attention_series(s, g);
  ASSERT_EQ(a.size(), 100U);
  EXPECT_EQ(a[0].progress, 1);
  EXPECT_EQ(a[0].frames, 3);
  EXPECT_NEAR(a[0].tablet_pct, 100.0 / 3, 1e-12);
  EXPECT_NEAR(a[0].volume_pct, 100.0 / 3, 1e-12);
  EXPECT_EQ(a[1].frames, 1);
  EXPECT_DOUBLE_EQ(a[1].volume_pct, 100.0);
  EXPECT_TRUE(a[2].empty);
  EXPECT_EQ(a[2].tablet_pct, 0.0);
  EXPECT_EQ(a[99].frames, 1);
  EXPECT_EQ(a[99].progress, 100);
}

TEST(Attention, ShiftInvariant) {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto build = [&](double shift, std::uint64_t seed) {
    std::mt19937_64 r(seed);
    SessionRecord s = basic_session(shift, shift + 500, shift + 20000);
    for (int i = 0; i < 2000; ++i) {
      const double t = shift + i * 10.0;
      s.events.insert(s.events.end() - 1, gaze_event(t, yaw(std::sin(i * 0.01) * 5), u(r) < 0.7 ? GazeHit::Tablet : GazeHit::Volume));
    }
    std::stable_sort(s.events.begin(), s.events.end(), [](auto& a, auto& b) { return a.t_ms < b.t_ms; });
    return analyze_gaze(s);
  };
  const AttentionSeries a = build(0, 5);
  const AttentionSeries b = build(250000, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].frames, b[i].frames);
    EXPECT_DOUBLE_EQ(a[i].tablet_pct, b[i].tablet_pct);
  }
  (void)rng;
}

TEST(Report, CsvAndSummary) {
  SessionRecord s = basic_session(0, 100, 1000);
  s.events.insert(s.events.begin(), gaze_event(0, yaw(0), GazeHit::Tablet));
  s.events.insert(s.events.begin() + 1, gaze_event(50, yaw(60), GazeHit::Volume));
  s.events.insert(s.events.begin() + 2, gaze_event(60, yaw(60), GazeHit::Volume));
  const AttentionSeries a = analyze_gaze(s);
  const std::string csv = attention_csv(a);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "progress,tablet_pct,volume_pct,frames,empty");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  const Json j = metrics_summary(s);
  EXPECT_EQ(j["gaze_samples"], 3);
  EXPECT_EQ(j["retained_samples"], 2);
  EXPECT_DOUBLE_EQ(j["overall_tct_ms"].get<double>(), 1000.0);
  EXPECT_DOUBLE_EQ(j["initial_exploration_ms"].get<double>(), 100.0);
  EXPECT_EQ(j["empty_windows"], 98);
}
