#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "s2_oracle.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/experiment/experiment.hpp"
#include "spikewave/network/encoding.hpp"
#include "spikewave/network/kernels.hpp"
#include "spikewave/network/reconstruct.hpp"
#include "spikewave/network/trainer.hpp"
#include "spikewave/network/wave.hpp"

using namespace spikewave;

namespace {

NeuronConfig if_neuron(double threshold) {
  NeuronConfig n;
  n.model = NeuronModel::IF;
  n.if_threshold = threshold;
  return n;
}

// One scale, one orientation, hand-written C1 latencies.
EncodedImage scripted(std::size_t rows, std::size_t cols,
                      const std::vector<std::tuple<std::size_t, std::size_t, double>>& spikes) {
  EncodedImage enc;
  C1Scale sc;
  sc.rows = rows;
  sc.cols = cols;
  sc.orientations = 1;
  sc.latency.assign(rows * cols, Latency::never());
  for (const auto& [r, c, t] : spikes) sc.latency[r * cols + c] = Latency(t);
  enc.scales.push_back(sc);
  enc.events = c1_events(enc.scales);
  return enc;
}

NetworkGeometry small_geometry(int rf, int radius, int orientations = 1) {
  NetworkGeometry g;
  g.scale_factors = {1.0};
  g.rf = rf;
  g.inhibition_radius = radius;
  g.n_orientations = orientations;
  return g;
}

double variance(const std::vector<double>& xs) {
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / xs.size();
}

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.synthetic_per_class = 24;
  cfg.n_sample = 8;
  cfg.n_features = 4;
  cfg.n_iterations = 16;
  cfg.snapshot_every = 8;
  cfg.schedule_period = 4;
  return cfg;
}

}  // namespace

TEST(Kernels, ZeroMeanUnitNormOriented) {
  const auto ks = make_oriented_kernels();
  ASSERT_EQ(ks.size(), 4u);
  for (std::size_t o = 0; o < ks.size(); ++o) {
    EXPECT_EQ(ks[o].orientation, static_cast<int>(o));
    EXPECT_DOUBLE_EQ(ks[o].angle_deg, 45.0 * o);
    double sum = 0.0, sq = 0.0;
    for (double v : ks[o].kernel.data()) {
      sum += v;
      sq += v * v;
    }
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_NEAR(sq, 1.0, 1e-12);
  }
  // The horizontal kernel is constant along each row, the vertical one
  // along each column.
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 1; c < 5; ++c) {
      EXPECT_NEAR(ks[0].kernel(r, c), ks[0].kernel(r, 0), 1e-15);
      EXPECT_NEAR(ks[2].kernel(c, r), ks[2].kernel(0, r), 1e-15);
    }
  }
}

TEST(S1, UniformImageNeverFires) {
  const auto ks = make_oriented_kernels();
  const auto maps = s1_encode(Image(20, 20, 0.7), 0, ks);
  ASSERT_EQ(maps.size(), 4u);
  for (const auto& m : maps) {
    EXPECT_EQ(m.grid.rows(), 16u);
    for (Latency t : m.grid.data()) EXPECT_TRUE(t.is_never());
  }
}

TEST(S1, VerticalStepEdgeSelectsVerticalOrientation) {
  const auto ks = make_oriented_kernels();
  Image img(32, 32, 0.0);
  for (std::size_t r = 0; r < 32; ++r) {
    for (std::size_t c = 16; c < 32; ++c) img(r, c) = 1.0;
  }
  const auto maps = s1_encode(img, 0, ks);
  std::size_t fired = 0;
  for (std::size_t o = 0; o < 4; ++o) {
    for (std::size_t r = 0; r < maps[o].grid.rows(); ++r) {
      for (std::size_t c = 0; c < maps[o].grid.cols(); ++c) {
        if (maps[o].grid(r, c).is_never()) continue;
        ++fired;
        EXPECT_EQ(o, 2u) << "at " << r << "," << c;
      }
    }
  }
  EXPECT_GT(fired, 0u);
  // Windows centred on the edge are the earliest.
  for (std::size_t r = 0; r < maps[2].grid.rows(); ++r) {
    EXPECT_TRUE(maps[2].grid(r, 12).fired() || maps[2].grid(r, 13).fired());
  }
}

TEST(S1, ContrastScalingKeepsLatencyOrder) {
  const auto ks = make_oriented_kernels();
  Rng rng = rng_create(3);
  Image a(24, 24);
  for (double& v : a.data()) v = 0.25 + 0.25 * rng.uniform();
  Image b = a;
  for (double& v : b.data()) v = 2.0 * (v - 0.25);
  const auto ma = s1_encode(a, 0, ks);
  const auto mb = s1_encode(b, 0, ks);
  std::vector<SpikeEvent> ea, eb;
  for (std::size_t o = 0; o < 4; ++o) {
    for (std::size_t r = 0; r < ma[o].grid.rows(); ++r) {
      for (std::size_t c = 0; c < ma[o].grid.cols(); ++c) {
        if (ma[o].grid(r, c).fired()) {
          ea.push_back({Layer::S1, 0, static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(c), ma[o].grid(r, c)});
        }
        if (mb[o].grid(r, c).fired()) {
          eb.push_back({Layer::S1, 0, static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(c), mb[o].grid(r, c)});
        }
      }
    }
  }
  ASSERT_EQ(ea.size(), eb.size());
  ASSERT_GT(ea.size(), 10u);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    EXPECT_NEAR(ea[i].latency.value(), eb[i].latency.value(), 1e-9);
  }
}

TEST(S1, TooSmallImageRejected) {
  const auto ks = make_oriented_kernels();
  EXPECT_THROW(s1_encode(Image(4, 10, 0.5), 0, ks), DimensionError);
  EXPECT_THROW(s1_encode(Image(), 0, ks), DimensionError);
}

TEST(C1, MinPoolingExamples) {
  LatencyMap in{0, 0, Grid<Latency>(6, 6)};
  auto out = c1_pool(std::vector<LatencyMap>{in}, 4, 2);
  ASSERT_EQ(out[0].grid.rows(), 2u);
  for (Latency t : out[0].grid.data()) EXPECT_TRUE(t.is_never());

  in.grid(3, 3) = Latency(0.3);
  in.grid(0, 0) = Latency(0.6);
  out = c1_pool(std::vector<LatencyMap>{in}, 4, 2);
  // (3,3) lies in all four overlapping windows.
  for (Latency t : out[0].grid.data()) EXPECT_EQ(t, Latency(0.3));

  EXPECT_THROW(c1_pool(std::vector<LatencyMap>{in}, 2, 3), ContractViolation);
  EXPECT_THROW(c1_pool(std::vector<LatencyMap>{in}, 7, 1), DimensionError);
}

TEST(S2, ZeroWeightsNeverFire) {
  const auto enc = scripted(5, 5, {{0, 0, 0.1}, {2, 3, 0.2}, {4, 4, 0.5}});
  SynapseBank bank(2, {4, 4, 1}, 0.0);
  const S2Output out = s2_wave(enc, bank, small_geometry(4, 1), if_neuron(1.0), {});
  EXPECT_TRUE(out.spikes.empty());
  const WaveResult res = c2_pool(out, bank);
  for (std::size_t f = 0; f < 2; ++f) {
    EXPECT_TRUE(res.c2_latency[f].is_never());
    EXPECT_EQ(res.c2_potential[f], 0.0);
  }
}

TEST(S2, FiresOnTheCeilThirdAfferent) {
  // 4x4 field, threshold ceil(16/3) = 6 unit weights.
  Rng rng = rng_create(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> spikes;
    std::vector<double> times;
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        if (rng.below(3) == 0) continue;
        const double t = rng.uniform();
        spikes.emplace_back(r, c, t);
        times.push_back(t);
      }
    }
    std::sort(times.begin(), times.end());
    SynapseBank bank(1, {4, 4, 1}, 1.0);
    const auto out = s2_wave(scripted(4, 4, spikes), bank, small_geometry(4, 1),
                             if_neuron(6.0), {});
    if (times.size() < 6) {
      EXPECT_TRUE(out.spikes.empty());
    } else {
      ASSERT_EQ(out.spikes.size(), 1u);
      EXPECT_EQ(out.spikes[0].latency, Latency(times[5]));
    }
  }
}

TEST(S2, InhibitionSuppressesTheLaterNeighbour) {
  // Two cells side by side; weight only on the field's right column.
  SynapseBank bank(1, {4, 4, 1}, 0.0);
  for (std::size_t r = 0; r < 4; ++r) bank.at(0, r, 3, 0) = 1.0;
  const auto enc = scripted(4, 5, {{0, 4, 0.1}, {0, 3, 0.2}});
  const auto out = s2_wave(enc, bank, small_geometry(4, 2), if_neuron(1.0), {});
  ASSERT_EQ(out.spikes.size(), 1u);
  EXPECT_EQ(out.spikes[0].col, 1u);
  EXPECT_EQ(out.spikes[0].latency, Latency(0.1));
  // Without inhibition both cells fire.
  const auto free = s2_wave(enc, bank, small_geometry(4, 0), if_neuron(1.0), {});
  EXPECT_EQ(free.spikes.size(), 2u);
}

TEST(S2, UnsortedEventsRejected) {
  auto enc = scripted(4, 4, {{0, 0, 0.1}, {1, 1, 0.2}});
  std::swap(enc.events[0], enc.events[1]);
  SynapseBank bank(1, {4, 4, 1}, 1.0);
  EXPECT_THROW(s2_wave(enc, bank, small_geometry(4, 1), if_neuron(1.0), {}),
               ContractViolation);
  SynapseBank wrong(1, {3, 3, 1}, 1.0);
  const auto ok = scripted(4, 4, {{0, 0, 0.1}});
  EXPECT_THROW(s2_wave(ok, wrong, small_geometry(4, 1), if_neuron(1.0), {}),
               DimensionError);
}

TEST(S2, MatchesBruteForceReplay) {
  NetworkGeometry geom;
  geom.scale_factors = {1.0, 0.75};
  geom.c1_window = 2;
  geom.c1_stride = 2;
  geom.rf = 4;
  geom.n_features = 3;
  geom.inhibition_radius = 1;
  const auto ks = make_oriented_kernels();
  Rng rng = rng_create(44);
  for (int trial = 0; trial < 40; ++trial) {
    Image img(16, 16);
    for (double& v : img.data()) v = rng.uniform();
    const EncodedImage enc = encode_image(img, geom, ks);
    SynapseBank bank(3, {4, 4, 4});
    for (double& w : bank.all()) w = rng.uniform(0.0, 1.0);
    const double threshold = 1.0 + 3.0 * rng.uniform();
    SynapseBank copy = bank;
    const auto out = s2_wave(enc, bank, geom, if_neuron(threshold), {});
    const auto ref = oracle::replay_if(enc, copy, 4, 1, threshold, nullptr);
    auto ref_spikes = ref.spikes;
    std::sort(ref_spikes.begin(), ref_spikes.end(), SpikeOrder{});
    ASSERT_EQ(out.spikes, ref_spikes) << "trial " << trial;
    const WaveResult res = c2_pool(out, bank);
    EXPECT_EQ(res.c2_latency, ref.c2_latency);
  }
}

TEST(S2, LearningWaveMatchesReplayWithPlasticity) {
  NetworkGeometry geom;
  geom.scale_factors = {1.0, 0.75};
  geom.c1_window = 2;
  geom.c1_stride = 2;
  geom.rf = 4;
  geom.n_features = 3;
  geom.inhibition_radius = 1;
  RunConfig cfg;
  cfg.n_features = 3;
  cfg.rule = Rule::Probabilistic;
  cfg.a_plus_init = 0.25;
  const auto ks = make_oriented_kernels();
  Rng rng = rng_create(45);
  for (int trial = 0; trial < 20; ++trial) {
    Image img(16, 16);
    for (double& v : img.data()) v = rng.uniform();
    const EncodedImage enc = encode_image(img, geom, ks);
    SynapseBank bank(3, {4, 4, 4});
    for (double& w : bank.all()) w = rng.uniform(0.0, 1.0);
    SynapseBank copy = bank;
    Learner a(cfg);
    Learner b(cfg);
    const auto out = s2_wave(enc, bank, geom, if_neuron(2.0), {.spiking = true, .learner = &a});
    const auto ref = oracle::replay_if(enc, copy, 4, 1, 2.0, &b);
    auto ref_spikes = ref.spikes;
    std::sort(ref_spikes.begin(), ref_spikes.end(), SpikeOrder{});
    ASSERT_EQ(out.spikes, ref_spikes);
    EXPECT_EQ(bank, copy);
  }
}

TEST(S2, InhibitionAndFireOnceHoldOnRealImages) {
  RunConfig cfg;
  cfg.rule = Rule::Probabilistic;
  Network net(cfg);
  Rng rng = rng_create(8);
  SynapseBank bank = init_bank(cfg, rng);
  Learner learner(cfg);
  const Split split = build_split([] {
    RunConfig c;
    c.synthetic_per_class = 8;
    c.n_sample = 4;
    return c;
  }(), {});
  for (const auto& item : split.train) {
    const EncodedImage enc = net.encode(item.image);
    NetworkGeometry g = net.geometry();
    S2Layer layer(g, net.neuron());
    const auto out = layer.run(enc, bank, {.spiking = true, .learner = &learner});
    for (std::size_t i = 0; i < out.spikes.size(); ++i) {
      for (std::size_t j = i + 1; j < out.spikes.size(); ++j) {
        const auto& a = out.spikes[i];
        const auto& b = out.spikes[j];
        if (a.scale != b.scale) continue;
        const long dr = std::labs(static_cast<long>(a.row) - static_cast<long>(b.row));
        const long dc = std::labs(static_cast<long>(a.col) - static_cast<long>(b.col));
        EXPECT_TRUE(dr > g.inhibition_radius || dc > g.inhibition_radius);
      }
    }
  }
  EXPECT_EQ(bank.all().size(), cfg.n_features * 8u * 8u * 4u);
}

TEST(C2, SingleSpikePassesThrough) {
  SynapseBank bank(1, {4, 4, 1}, 0.5);
  const auto enc = scripted(4, 4, {{1, 1, 0.25}, {2, 2, 0.75}});
  const auto out = s2_wave(enc, bank, small_geometry(4, 1), if_neuron(0.5), {});
  const WaveResult res = c2_pool(out, bank);
  EXPECT_EQ(res.c2_latency[0], Latency(0.25));
  ASSERT_TRUE(res.winner[0].has_value());
  EXPECT_DOUBLE_EQ(res.c2_potential[0], 0.5 / 8.0);
}

TEST(C2, ScalingWeightsAndThresholdLeavesPotentialUnchanged) {
  RunConfig cfg;
  cfg.if_threshold = 10.0;
  Network net(cfg);
  Rng rng = rng_create(12);
  SynapseBank bank = init_bank(cfg, rng);
  Image img(64, 64);
  for (double& v : img.data()) v = rng.uniform();
  const EncodedImage enc = net.encode(img);
  const WaveResult base = net.present(enc, bank, {});
  for (double c : {2.0, 0.37}) {
    RunConfig scaled_cfg = cfg;
    scaled_cfg.if_threshold = 10.0 * c;
    Network scaled_net(scaled_cfg);
    SynapseBank scaled = bank;
    for (double& w : scaled.all()) w *= c;
    const WaveResult res = scaled_net.present(enc, scaled, {});
    for (std::size_t f = 0; f < bank.n_features(); ++f) {
      EXPECT_NEAR(res.c2_potential[f], base.c2_potential[f], 1e-12);
    }
    const auto fa = net.features(enc, bank);
    const auto fb = scaled_net.features(enc, scaled);
    for (std::size_t f = 0; f < fa.size(); ++f) EXPECT_NEAR(fa[f], fb[f], 1e-12);
  }
}

TEST(Reconstruct, FlatTensorMapsToZero) {
  const auto ks = make_oriented_kernels();
  const TensorShape shape{8, 8, 4};
  const std::vector<double> zeros(shape.size(), 0.0);
  const auto img = reconstruct_feature(zeros, shape, ks);
  EXPECT_EQ(img.rows(), 12u);
  EXPECT_EQ(img.cols(), 12u);
  for (auto v : img.data()) EXPECT_EQ(v, 0);
}

TEST(Reconstruct, VerticalPlaneDrawsVerticalStrokes) {
  const auto ks = make_oriented_kernels();
  const TensorShape shape{8, 8, 4};
  std::vector<double> t(shape.size(), 0.0);
  for (std::size_t r = 0; r < 8; ++r) t[shape.index(r, 3, 2)] = 1.0;
  const auto img = reconstruct_feature(t, shape, ks);
  std::vector<double> col_means(img.cols(), 0.0), row_means(img.rows(), 0.0);
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      col_means[c] += img(r, c) / static_cast<double>(img.rows());
      row_means[r] += img(r, c) / static_cast<double>(img.cols());
    }
  }
  EXPECT_GT(variance(col_means), 2.0 * variance(row_means));
  std::uint8_t hi = 0;
  for (auto v : img.data()) hi = std::max(hi, v);
  EXPECT_EQ(hi, 255);
}

TEST(Reconstruct, TranslationEquivariant) {
  const auto ks = make_oriented_kernels();
  const TensorShape shape{10, 10, 4};
  std::vector<double> a(shape.size(), 0.0), b(shape.size(), 0.0);
  Rng rng = rng_create(1);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t o = 0; o < 4; ++o) {
        const double w = rng.uniform();
        a[shape.index(1 + i, 1 + j, o)] = w;
        b[shape.index(3 + i, 4 + j, o)] = w;
      }
    }
  }
  const Grid<double> ra = reconstruct_raw(a, shape, ks);
  const Grid<double> rb = reconstruct_raw(b, shape, ks);
  for (std::size_t r = 0; r + 2 < ra.rows(); ++r) {
    for (std::size_t c = 0; c + 3 < ra.cols(); ++c) {
      EXPECT_NEAR(rb(r + 2, c + 3), ra(r, c), 1e-12);
    }
  }
  const auto ia = reconstruct_feature(a, shape, ks);
  const auto ib = reconstruct_feature(b, shape, ks);
  for (std::size_t r = 0; r + 2 < ia.rows(); ++r) {
    for (std::size_t c = 0; c + 3 < ia.cols(); ++c) EXPECT_EQ(ib(r + 2, c + 3), ia(r, c));
  }
}

TEST(Reconstruct, ShapeMismatchRejected) {
  const auto ks = make_oriented_kernels();
  EXPECT_THROW(reconstruct_raw(std::vector<double>(10, 0.0), {4, 4, 4}, ks), DimensionError);
  EXPECT_THROW(reconstruct_raw(std::vector<double>(16 * 5, 0.0), {4, 4, 5}, ks), DimensionError);
}

TEST(Training, DisabledLearningLeavesBankUnchanged) {
  RunConfig cfg = tiny_config();
  cfg.a_plus_init = 0.0;
  cfg.rule = Rule::Probabilistic;
  const Split split = build_split(cfg, {});
  Network net(cfg);
  const EncodedSplit data = encode_split(split, net);
  Rng rng = rng_create(0);
  SynapseBank bank = init_bank(cfg, rng);
  const SynapseBank before = bank;
  Learner learner(cfg);
  const auto counts = train_epoch(data.train, net, bank, learner);
  EXPECT_EQ(counts.size(), data.train.size());
  EXPECT_GT(learner.post_spikes(), 0u);
  EXPECT_EQ(bank, before);
}

TEST(Training, WeightsStayInRuleBounds) {
  for (Rule rule : {Rule::Original, Rule::Probabilistic}) {
    RunConfig cfg = tiny_config();
    cfg.rule = rule;
    cfg.a_plus_init = 0.25;
    const Split split = build_split(cfg, {});
    Network net(cfg);
    const EncodedSplit data = encode_split(split, net);
    Rng rng = rng_create(0);
    SynapseBank bank = init_bank(cfg, rng);
    Learner learner(cfg);
    train_epoch(data.train, net, bank, learner);
    for (double w : bank.all()) {
      ASSERT_GE(w, 0.0);
      if (rule == Rule::Original) {
        ASSERT_GT(w, 0.0);
        ASSERT_LT(w, 1.0);
      }
    }
  }
}

TEST(Training, SameSeedGivesIdenticalSnapshots) {
  const RunConfig cfg = tiny_config();
  const Split split = build_split(cfg, {});
  const auto order = presentation_order(split, cfg);
  std::vector<SynapseBank> runs[2];
  for (auto& snaps : runs) {
    Network net(cfg);
    const EncodedSplit data = encode_split(split, net);
    train_run(cfg, data, order, net,
              [&](int, const SynapseBank& b) { snaps.push_back(b); });
  }
  ASSERT_EQ(runs[0].size(), 2u);
  EXPECT_EQ(runs[0], runs[1]);
  EXPECT_NE(runs[0][0], runs[0][1]);
}

TEST(Training, InitialBankRanges) {
  RunConfig cfg;
  Rng rng = rng_create(1);
  const SynapseBank original = init_bank(cfg, rng);
  for (double w : original.all()) {
    ASSERT_GE(w, 0.6);
    ASSERT_LT(w, 1.0);
  }
  cfg.rule = Rule::Probabilistic;
  const SynapseBank prob = init_bank(cfg, rng);
  for (double w : prob.all()) {
    ASSERT_GE(w, 0.0);
    ASSERT_LT(w, 0.3);
  }
}

TEST(Neuron, DerivedThresholdsAndChargeScale) {
  RunConfig cfg;
  EXPECT_NEAR(derived_if_threshold(cfg), 64.0 / 3.0 * 0.8, 1e-12);
  cfg.rule = Rule::Probabilistic;
  EXPECT_NEAR(derived_if_threshold(cfg), 64.0 / 3.0 * 0.8, 1e-12);
  cfg.neuron = NeuronModel::IzhikevichRS;
  const NeuronConfig n = NeuronConfig::from_config(cfg);
  EXPECT_NEAR(n.q_scale / n.izh.C * n.if_threshold, n.izh.v_th - n.izh.v_rest, 1e-12);
  cfg.if_threshold = 5.0;
  EXPECT_EQ(NeuronConfig::from_config(cfg).if_threshold, 5.0);
}
