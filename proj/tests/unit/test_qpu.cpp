// Copyright 2026 The qpilot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpilot/qpu.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qpilot {
namespace {

DriftParams drift(double tau, double floor, double sigma = 0.0, std::uint64_t seed = 1) {
  DriftParams d;
  d.single = d.two = d.measure = {tau, floor};
  d.jitter_sigma = sigma;
  d.seed = seed;
  return d;
}

QpuModel grid_qpu(double sigma = 0.0) {
  const Topology g = make_grid(2, 4);
  return build_qpu("q", g, FidelitySpec::uniform(g, 0.99, 0.97, 0.98),
                   drift(10000.0, 0.8, sigma));
}

TEST(Qpu, SplitFidelityFavoursTheRightHalf) {
  const Topology g = make_grid(2, 4);
  const auto f = FidelitySpec::split(g, 0.90, 0.99, 0.88, 0.97, 0.91, 0.995);
  for (std::size_t q = 0; q < 8; ++q) {
    EXPECT_EQ(f.single_gate[q], q < 4 ? 0.90 : 0.99);
    EXPECT_EQ(f.measure[q], q < 4 ? 0.91 : 0.995);
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const bool right = g.edges()[e].first >= 4;
    EXPECT_EQ(f.two_gate[e], right ? 0.97 : 0.88);
  }
}

TEST(Qpu, BuildValidatesInputs) {
  const Topology g = make_grid(2, 2);
  EXPECT_THROW(build_qpu("x", g, FidelitySpec::uniform(g, 1.2, 0.9, 0.9), drift(1, 0.5)),
               std::invalid_argument);
  EXPECT_THROW(build_qpu("x", g, FidelitySpec::uniform(g, 0.9, 0.9, 0.9), drift(0, 0.5)),
               std::invalid_argument);
  EXPECT_THROW(build_qpu("x", g, FidelitySpec::uniform(g, 0.9, 0.9, 0.9), drift(1, 0.95)),
               std::invalid_argument);
  EXPECT_THROW(build_qpu("x", g, FidelitySpec::uniform(g, 0.9, 0.9, 0.9), drift(1, 0.5, -1)),
               std::invalid_argument);
  EXPECT_THROW(build_qpu("x", Topology(1, {}), FidelitySpec{{0.9}, {}, {0.9}}, drift(1, 0.5)),
               std::invalid_argument);
  FidelitySpec short_spec = FidelitySpec::uniform(g, 0.9, 0.9, 0.9);
  short_spec.two_gate.pop_back();
  EXPECT_THROW(build_qpu("x", g, short_spec, drift(1, 0.5)), std::invalid_argument);
}

TEST(Qpu, DriftFollowsTheExponentialLaw) {
  QpuModel q = grid_qpu();
  for (int step = 0; step < 100; ++step) {
    apply_drift(q, 60);
  }
  const double t = 6000.0;
  EXPECT_NEAR(q.fidelity.single_gate[0], 0.8 + 0.19 * std::exp(-t / 10000.0), 1e-12);
  EXPECT_NEAR(q.fidelity.two_gate[0], 0.8 + 0.17 * std::exp(-t / 10000.0), 1e-12);
  EXPECT_NEAR(q.fidelity.measure[3], 0.8 + 0.18 * std::exp(-t / 10000.0), 1e-12);
  EXPECT_EQ(q.fidelity.last_update, 6000);
}

TEST(Qpu, DriftWithoutJitterIsMonotone) {
  QpuModel q = grid_qpu();
  double prev = q.fidelity.two_gate[2];
  for (int step = 0; step < 500; ++step) {
    apply_drift(q, 60);
    EXPECT_LE(q.fidelity.two_gate[2], prev);
    EXPECT_GE(q.fidelity.two_gate[2], 0.8);
    prev = q.fidelity.two_gate[2];
  }
}

TEST(Qpu, JitterStaysWithinFloorAndOne) {
  QpuModel q = grid_qpu(0.05);
  for (int step = 0; step < 1000; ++step) {
    apply_drift(q, 60);
    for (double f : q.fidelity.single_gate) {
      ASSERT_GE(f, 0.8);
      ASSERT_LE(f, 1.0);
    }
  }
}

TEST(Qpu, DriftIsDeterministicPerSeed) {
  QpuModel a = grid_qpu(0.01);
  QpuModel b = grid_qpu(0.01);
  for (int step = 0; step < 50; ++step) {
    apply_drift(a, 60);
    apply_drift(b, 60);
  }
  EXPECT_EQ(a.fidelity.single_gate, b.fidelity.single_gate);
  EXPECT_EQ(a.fidelity.two_gate, b.fidelity.two_gate);
  EXPECT_THROW(apply_drift(a, -1), std::invalid_argument);
}

TEST(Qpu, AllocationIsAllOrNothing) {
  QpuModel q = grid_qpu();
  const std::vector<PhysicalQubit> first = {0, 1};
  EXPECT_TRUE(allocate_qubits(q, first));
  const std::vector<PhysicalQubit> overlap = {2, 1};
  EXPECT_FALSE(allocate_qubits(q, overlap));
  EXPECT_EQ(q.status[2], QubitStatus::Free);
  const std::vector<PhysicalQubit> dup = {3, 3};
  EXPECT_FALSE(allocate_qubits(q, dup));
  const std::vector<PhysicalQubit> out = {9};
  EXPECT_FALSE(allocate_qubits(q, out));
  EXPECT_EQ(count_free_executable(q), 6U);
  release_qubits(q, first);
  EXPECT_EQ(count_free_executable(q), 8U);
  EXPECT_THROW(release_qubits(q, first), std::logic_error);
}

TEST(Qpu, CalibrationRegionLifecycle) {
  QpuModel q = grid_qpu();
  const std::vector<PhysicalQubit> targets = {4, 6};
  partition_regions(q, targets);
  EXPECT_EQ(calibration_region(q), targets);
  EXPECT_EQ(executable_region(q).size(), 6U);
  EXPECT_FALSE(allocate_qubits(q, std::vector<PhysicalQubit>{4}));
  EXPECT_THROW(partition_regions(q, std::vector<PhysicalQubit>{0}), std::logic_error);
  release_qubits(q, targets);
  EXPECT_TRUE(calibration_region(q).empty());
  EXPECT_EQ(q.status[4], QubitStatus::Free);
}

TEST(Qpu, PartitionRequiresFreeTargets) {
  QpuModel q = grid_qpu();
  ASSERT_TRUE(allocate_qubits(q, std::vector<PhysicalQubit>{0}));
  EXPECT_THROW(partition_regions(q, std::vector<PhysicalQubit>{0}), std::logic_error);
  EXPECT_TRUE(calibration_region(q).empty());
}

TEST(Qpu, SubDeviceView) {
  const Topology g = make_grid(2, 4);
  const QpuModel q = build_qpu("q", g, FidelitySpec::split(g, 0.9, 0.99, 0.88, 0.97, 0.9, 0.99),
                               drift(1e9, 0.0));
  const DeviceView v = device_view(q, {4, 5, 6, 7});
  EXPECT_EQ(v.topology.size(), 4U);
  EXPECT_EQ(v.single_gate, (std::vector<double>{0.99, 0.99, 0.99, 0.99}));
  EXPECT_EQ(v.edge_fidelity(0, 1), 0.97);
  EXPECT_THROW((void)v.edge_fidelity(0, 3), std::invalid_argument);
}

}  // namespace
}  // namespace qpilot
