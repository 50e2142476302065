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

#include "qpilot/harness.hpp"

#include "qpilot/calibration.hpp"
#include "qpilot/mapper.hpp"
#include "qpilot/noisy_sim.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace qpilot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PendingCalibration {
  std::size_t qpu = 0;
  std::size_t check = 0;
  FlaggedElements flagged;
};

double min_of(const std::vector<double>& v) {
  return v.empty() ? 1.0 : *std::min_element(v.begin(), v.end());
}

double finite_or_one(double v) { return v == kInf ? 1.0 : v; }

double trial_score(const Circuit& c, const QpuModel& q, std::size_t beam) {
  if (active_qubit_count(c) > q.size()) {
    return 0.0;
  }
  return map_circuit(c, device_view(q), beam).fidelity_score;
}

class Runner {
 public:
  Runner(const Scenario& s, std::string label) : s_(s) {
    report_.label = std::move(label);
    for (const auto& q : s.qpus) {
      if (s.scheduler.calibration.enabled) {
        check_restorable(q.model, s.scheduler.calibration);
      }
      qpus_.push_back(q.model);
      calib_.push_back(initial_calibration_state(q.model, s.scheduler.calibration, 0));
    }
    next_task_id_ = s.arrivals.size() + 1;
    next_drift_ = s.drift_step;
  }

  Report run() {
    Seconds now = 0;
    while (true) {
      const auto t = next_event(now);
      if (!t) {
        break;
      }
      now = *t;
      completions(now);
      if (now <= s_.duration) {
        drift(now);
        trace(now);
        checks(now);
      }
      arrivals(now);
      schedule_tick(state_, qpus_, now, s_.scheduler);
      first_ = false;
    }
    reject_stranded(now);
    return finish();
  }

 private:
  std::optional<Seconds> next_event(Seconds now) const {
    std::optional<Seconds> t;
    const auto consider = [&](Seconds c) {
      if ((first_ || c > now) && (!t || c < *t)) {
        t = c;
      }
    };
    if (first_) {
      consider(0);
    }
    if (const auto c = next_completion(state_)) {
      consider(*c);
    }
    if (arrival_ < s_.arrivals.size()) {
      consider(s_.arrivals[arrival_].time);
    }
    const bool any_drift = std::any_of(s_.qpus.begin(), s_.qpus.end(),
                                       [](const QpuConfig& q) { return q.drift_enabled; });
    if (any_drift && next_drift_ <= s_.duration) {
      consider(next_drift_);
    }
    if (next_trace_ <= s_.duration) {
      consider(next_trace_);
    }
    if (s_.scheduler.calibration.enabled) {
      for (const auto& c : calib_) {
        if (c.next_check_time <= s_.duration) {
          consider(c.next_check_time);
        }
      }
    }
    return t;
  }

  void completions(Seconds now) {
    while (true) {
      std::optional<TransactionId> due;
      for (const auto& r : state_.running) {
        if (r.thread.expected_completion == now &&
            (!due || r.thread.transaction_id < *due)) {
          due = r.thread.transaction_id;
        }
      }
      if (!due) {
        return;
      }
      const RunningThread done = complete_thread(state_, *due, qpus_, now, s_.scheduler);
      for (const auto& m : done.transaction.members) {
        if (m.task_type == TaskType::Calibration) {
          finish_calibration(m.task_id, now);
        }
      }
    }
  }

  void finish_calibration(TaskId id, Seconds now) {
    const auto it = pending_.find(id);
    if (it == pending_.end()) {
      return;
    }
    const PendingCalibration& p = it->second;
    const QpuModel& q = qpus_[p.qpu];
    release_pending(calib_[p.qpu], q, calibration_targets(q, p.flagged));
    CheckRecord& c = report_.checks[p.check];
    c.calibrated_at = now;
    for (PhysicalQubit x : p.flagged.qubits) {
      const auto i = static_cast<std::size_t>(x);
      c.min_single_effective = std::min(c.min_single_effective, q.fidelity.single_gate[i]);
      c.min_measure_effective = std::min(c.min_measure_effective, q.fidelity.measure[i]);
    }
    for (std::size_t e : p.flagged.edges) {
      c.min_two_effective = std::min(c.min_two_effective, q.fidelity.two_gate[e]);
    }
    c.min_single_effective = finite_or_one(c.min_single_effective);
    c.min_two_effective = finite_or_one(c.min_two_effective);
    c.min_measure_effective = finite_or_one(c.min_measure_effective);
    pending_.erase(it);
  }

  void drift(Seconds now) {
    if (now != next_drift_) {
      return;
    }
    for (std::size_t i = 0; i < qpus_.size(); ++i) {
      if (s_.qpus[i].drift_enabled) {
        apply_drift(qpus_[i], now - qpus_[i].fidelity.last_update);
      }
    }
    next_drift_ += s_.drift_step;
  }

  void trace(Seconds now) {
    if (now != next_trace_) {
      return;
    }
    for (const QpuModel& q : qpus_) {
      const auto samples = sample_fidelities(q, now);
      report_.trace.insert(report_.trace.end(), samples.begin(), samples.end());
      ScoreSample s;
      s.time = now;
      s.qpu = q.id;
      if (s_.score_template) {
        s.mapped_score =
            trial_score(s_.templates[*s_.score_template].program, q, s_.scheduler.beam);
      }
      s.min_single = min_of(q.fidelity.single_gate);
      s.min_two = min_of(q.fidelity.two_gate);
      s.min_measure = min_of(q.fidelity.measure);
      report_.scores.push_back(std::move(s));
    }
    next_trace_ += s_.trace_interval;
  }

  void checks(Seconds now) {
    if (!s_.scheduler.calibration.enabled) {
      return;
    }
    const CalibrationPolicy& policy = s_.scheduler.calibration;
    for (std::size_t i = 0; i < qpus_.size(); ++i) {
      CalibrationState& cs = calib_[i];
      if (cs.next_check_time != now) {
        continue;
      }
      const QpuModel& q = qpus_[i];
      const FlaggedElements flagged = check_fidelities(q, policy);
      const FlaggedElements fresh = claim_new(cs, flagged);

      CheckRecord c;
      c.time = now;
      c.qpu = q.id;
      c.flagged_qubits = flagged.qubits.size();
      c.flagged_edges = flagged.edges.size();
      c.min_single_raw = min_of(q.fidelity.single_gate);
      c.min_two_raw = min_of(q.fidelity.two_gate);
      c.min_measure_raw = min_of(q.fidelity.measure);
      const std::set<PhysicalQubit> fq(fresh.qubits.begin(), fresh.qubits.end());
      const std::set<std::size_t> fe(fresh.edges.begin(), fresh.edges.end());
      c.min_single_effective = c.min_measure_effective = c.min_two_effective = kInf;
      for (std::size_t x = 0; x < q.size(); ++x) {
        if (fq.count(static_cast<PhysicalQubit>(x)) == 0) {
          c.min_single_effective = std::min(c.min_single_effective, q.fidelity.single_gate[x]);
          c.min_measure_effective = std::min(c.min_measure_effective, q.fidelity.measure[x]);
        }
      }
      for (std::size_t e = 0; e < q.fidelity.two_gate.size(); ++e) {
        if (fe.count(e) == 0) {
          c.min_two_effective = std::min(c.min_two_effective, q.fidelity.two_gate[e]);
        }
      }
      if (fresh.empty()) {
        c.min_single_effective = finite_or_one(c.min_single_effective);
        c.min_two_effective = finite_or_one(c.min_two_effective);
        c.min_measure_effective = finite_or_one(c.min_measure_effective);
      } else {
        const TaskId id = next_task_id_++;
        c.task = id;
        pending_[id] = {i, report_.checks.size(), fresh};
        submit_task(state_, build_calibration_task(q, fresh, policy, now, id), qpus_);
      }
      update_interval(cs, policy, !flagged.empty());
      cs.next_check_time = now + cs.current_interval;
      c.next_interval = cs.current_interval;
      report_.checks.push_back(std::move(c));
    }
  }

  void arrivals(Seconds now) {
    while (arrival_ < s_.arrivals.size() && s_.arrivals[arrival_].time == now) {
      const Arrival& a = s_.arrivals[arrival_];
      QuantumTask task = make_general_task(static_cast<TaskId>(arrival_ + 1),
                                           s_.templates[a.template_index].program, now,
                                           s_.timing);
      task.qpu_id = a.qpu_id;
      try {
        submit_task(state_, std::move(task), qpus_);
      } catch (const TaskRejected&) {
      }
      ++arrival_;
    }
  }

  void reject_stranded(Seconds now) {
    std::vector<QuantumTask> stranded = std::move(state_.waiting);
    state_.waiting.clear();
    for (const QuantumTask& t : stranded) {
      TaskRecord r;
      r.id = t.id;
      r.status = TaskStatus::Rejected;
      r.submit_time = t.submit_time;
      r.start_time = r.end_time = now;
      r.reason = "no processor can ever host the task";
      state_.rejected.push_back(std::move(r));
    }
  }

  Report finish() {
    Report& r = report_;
    r.tasks = state_.completed;
    r.tasks.insert(r.tasks.end(), state_.rejected.begin(), state_.rejected.end());
    std::sort(r.tasks.begin(), r.tasks.end(),
              [](const TaskRecord& a, const TaskRecord& b) { return a.id < b.id; });
    r.submitted = r.tasks.size();
    Seconds horizon = s_.duration;
    for (const auto& t : r.tasks) {
      if (t.task_type != TaskType::General) {
        continue;
      }
      if (t.status == TaskStatus::Completed) {
        ++r.completed;
        r.makespan = std::max(r.makespan, t.end_time);
      } else {
        ++r.rejected;
      }
      horizon = std::max(horizon, t.end_time + 1);
    }
    r.submitted = r.completed + r.rejected;
    for (Seconds w = 0; w < horizon || w == 0; w += s_.window) {
      ThroughputWindow win{w, w + s_.window, 0, 0};
      for (const auto& t : r.tasks) {
        if (t.task_type == TaskType::General && t.end_time >= win.start &&
            t.end_time < win.end) {
          ++(t.status == TaskStatus::Completed ? win.completed : win.rejected);
        }
      }
      r.windows.push_back(win);
    }
    r.events = state_.events;
    return std::move(r);
  }

  const Scenario& s_;
  std::vector<QpuModel> qpus_;
  std::vector<CalibrationState> calib_;
  SchedulerState state_;
  Report report_;
  std::map<TaskId, PendingCalibration> pending_;
  std::size_t arrival_ = 0;
  TaskId next_task_id_ = 1;
  Seconds next_drift_ = 0;
  Seconds next_trace_ = 0;
  bool first_ = true;
};

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::mt19937_64 gen(seq);
  return gen();
}

QpuConfig plain_qpu(const std::string& id, double single, double two, double measure) {
  Topology grid = make_grid(2, 4);
  const FidelitySpec fid = FidelitySpec::uniform(grid, single, two, measure);
  DriftParams drift;
  drift.single = drift.two = drift.measure = ElementDrift{1e12, 0.0};
  return {build_qpu(id, std::move(grid), fid, drift), false, false};
}

std::string fixed(double v) { return format_fixed(v, 6); }

ExperimentBundle runtime_experiment(std::uint64_t seed) {
  ExperimentBundle b;
  b.name = "runtime";
  b.summary.header = {"scenario", "run", "qpus", "degree", "makespan", "completed"};
  const std::vector<std::tuple<std::string, std::size_t, std::size_t>> cases = {
      {"1circuit_1qpu", 1, 1},
      {"2circuits_1qpu", 1, 2},
      {"1circuit_2qpus", 2, 1},
      {"2circuits_2qpus", 2, 2}};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [name, n_qpus, degree] = cases[c];
    double total = 0.0;
    for (std::size_t run = 0; run < 10; ++run) {
      const Scenario s = runtime_scenario(n_qpus, degree, derive(seed, c, run));
      Report r = run_scenario(s, name + "_run" + std::to_string(run + 1));
      total += static_cast<double>(r.makespan);
      b.summary.rows.push_back({name, std::to_string(run + 1), std::to_string(n_qpus),
                                std::to_string(degree), std::to_string(r.makespan),
                                std::to_string(r.completed)});
      b.reports.push_back(std::move(r));
    }
    b.summary.rows.push_back({name, "average", std::to_string(n_qpus), std::to_string(degree),
                              fixed(total / 10.0), ""});
  }
  return b;
}

ExperimentBundle calibration_experiment(std::uint64_t seed) {
  ExperimentBundle b;
  b.name = "calibration";
  b.summary.header = {"arm", "window_start", "window_end", "completed", "rejected"};
  for (const bool calibrate : {true, false}) {
    const std::string arm = calibrate ? "calibrated" : "uncalibrated";
    Report r = run_scenario(calibration_scenario(calibrate, seed), arm);
    for (const auto& w : r.windows) {
      b.summary.rows.push_back({arm, std::to_string(w.start), std::to_string(w.end),
                                std::to_string(w.completed), std::to_string(w.rejected)});
    }
    b.reports.push_back(std::move(r));
  }
  return b;
}

ExperimentBundle mapping_experiment(std::uint64_t seed) {
  ExperimentBundle b;
  b.name = "mapping";
  b.summary.header = {"benchmark", "run", "arm", "fidelity_score", "state_fidelity", "swaps"};
  const auto trials = mapping_trials(seed);
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> sums;
  for (const auto& t : trials) {
    const std::string bench(benchmark_name(t.benchmark));
    b.summary.rows.push_back({bench, std::to_string(t.run + 1), t.arm,
                              fixed(t.fidelity_score), fixed(t.state_fidelity),
                              std::to_string(t.swaps)});
    auto& s = sums[{bench, t.arm}];
    s.first += t.fidelity_score;
    s.second += t.state_fidelity;
  }
  for (const BenchmarkKind k :
       {BenchmarkKind::QFT, BenchmarkKind::GHZ, BenchmarkKind::DJ, BenchmarkKind::BV}) {
    for (const char* arm : {"aware", "naive"}) {
      const std::string bench(benchmark_name(k));
      const auto& s = sums[{bench, arm}];
      b.summary.rows.push_back(
          {bench, "average", arm, fixed(s.first / 4.0), fixed(s.second / 4.0), ""});
    }
  }
  return b;
}

}  // namespace

Report run_scenario(const Scenario& s, const std::string& label) {
  return Runner(s, label).run();
}

std::vector<std::string> experiment_names() { return {"runtime", "calibration", "mapping"}; }

ExperimentBundle run_experiment(const std::string& name, std::uint64_t seed) {
  if (name == "runtime") {
    return runtime_experiment(seed);
  }
  if (name == "calibration") {
    return calibration_experiment(seed);
  }
  if (name == "mapping") {
    return mapping_experiment(seed);
  }
  throw std::invalid_argument("unknown experiment '" + name +
                              "' (runtime, calibration or mapping)");
}

Scenario runtime_scenario(std::size_t n_qpus, std::size_t degree, std::uint64_t seed) {
  Scenario s;
  s.duration = 3600;
  for (std::size_t i = 0; i < n_qpus; ++i) {
    s.qpus.push_back(plain_qpu("qpu" + std::to_string(i), 0.99, 0.97, 0.98));
  }
  s.templates.push_back({"ghz2", generate_benchmark(BenchmarkKind::GHZ, 2)});
  for (int k = 0; k < 10; ++k) {
    s.arrivals.push_back({0, 0, {}});
  }
  s.scheduler.max_tasks_per_transaction = degree;
  s.scheduler.calibration.enabled = false;
  s.score_template = 0;
  reseed(s, seed);
  return s;
}

Scenario calibration_scenario(bool calibrate, std::uint64_t seed) {
  Scenario s;
  s.duration = 86400;
  s.drift_step = 60;
  QpuConfig q = plain_qpu("qpu0", 0.995, 0.985, 0.99);
  q.model.drift.single = {112500.0, 0.80};
  q.model.drift.two = {72000.0, 0.70};
  q.model.drift.measure = {112500.0, 0.85};
  q.model.drift.jitter_sigma = 0.0001;
  q.drift_enabled = true;
  s.qpus.push_back(std::move(q));
  s.templates.push_back({"ghz3", generate_benchmark(BenchmarkKind::GHZ, 3)});
  for (Seconds t = 0; t < s.duration; t += 10) {
    s.arrivals.push_back({t, 0, {}});
  }
  s.scheduler.min_fidelity = 0.5;
  s.scheduler.calibration.enabled = calibrate;
  s.trace_interval = 600;
  s.window = 3600;
  s.score_template = 0;
  reseed(s, seed);
  return s;
}

QpuModel mapping_qpu(std::uint64_t seed, std::size_t run) {
  Topology grid = make_grid(2, 4);
  FidelitySpec fid = FidelitySpec::split(grid, 0.90, 0.99, 0.88, 0.97, 0.90, 0.99);
  std::mt19937_64 rng(derive(seed, 0x6d6170, run));
  std::uniform_real_distribution<double> factor(0.995, 1.0);
  for (auto* values : {&fid.single_gate, &fid.two_gate, &fid.measure}) {
    for (double& f : *values) {
      f *= factor(rng);
    }
  }
  DriftParams drift;
  drift.single = drift.two = drift.measure = ElementDrift{1e12, 0.0};
  return build_qpu("split8", std::move(grid), fid, drift);
}

MappingTrial evaluate_mapping(const Circuit& physical, const QpuModel& qpu) {
  const CompactCircuit cc = compact_circuit(physical);
  const NoiseSpec noise = noise_from_qpu(qpu).restrict(cc.qubits);
  const SimResult noisy = simulate_noisy(cc.circuit, noise);
  MappingTrial t;
  t.state_fidelity = state_fidelity(simulate_statevector(cc.circuit), noisy.state);
  t.max_trace_deviation = noisy.max_trace_deviation;
  return t;
}

std::vector<MappingTrial> mapping_trials(std::uint64_t seed) {
  std::vector<MappingTrial> out;
  for (std::size_t run = 0; run < 4; ++run) {
    const QpuModel qpu = mapping_qpu(seed, run);
    for (const BenchmarkKind k :
         {BenchmarkKind::QFT, BenchmarkKind::GHZ, BenchmarkKind::DJ, BenchmarkKind::BV}) {
      const Circuit c = generate_benchmark(k, 4);
      const MappedCircuit aware = map_circuit(c, qpu);
      const MappedCircuit naive = map_naive(c, device_view(qpu));
      for (const auto& [arm, m] : {std::pair<const char*, const MappedCircuit*>{"aware", &aware},
                                   {"naive", &naive}}) {
        MappingTrial t = evaluate_mapping(m->circuit, qpu);
        t.benchmark = k;
        t.run = run;
        t.arm = arm;
        t.fidelity_score = m->fidelity_score;
        t.swaps = m->swap_count;
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace qpilot
