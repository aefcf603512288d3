#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "vistain/features.hpp"
#include "vistain/frechet.hpp"
#include "vistain/rng.hpp"
#include "vistain/sdc.hpp"

using namespace vistain;

namespace {

Eigen::RowVector3d unit(double a, double b, double c) {
  Eigen::RowVector3d v(a, b, c);
  return v / v.norm();
}

StainMatrix he_matrix() {
  Eigen::Matrix<double, 2, 3> m;
  m.row(0) = unit(0.65, 0.70, 0.29);
  m.row(1) = unit(0.07, 0.99, 0.11);
  return StainMatrix::from_unnormalized(m);
}

BinaryMask mask_of(int w, int h, bool value) {
  BinaryMask m;
  m.width = w;
  m.height = h;
  m.data.setConstant(static_cast<Eigen::Index>(w) * h, value);
  return m;
}

BinaryMask random_mask(int w, int h, double p, SplitMix64& rng) {
  BinaryMask m = mask_of(w, h, false);
  for (Eigen::Index i = 0; i < m.data.size(); ++i) m.data[i] = rng.uniform() < p;
  return m;
}

RgbImage render(const ConcentrationMap& cm, const StainMatrix& sm) {
  return od_to_rgb(render_od(cm, sm));
}

Eigen::MatrixXd random_psd(int d, SplitMix64& rng) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
  return a * a.transpose() / d;
}

}  // namespace

TEST_CASE("stain_masks threshold each channel") {
  ConcentrationMap cm{4, 4, Eigen::Matrix<double, Eigen::Dynamic, 2>::Constant(16, 2, 0.5)};
  auto above = stain_masks(cm, Eigen::Vector2d(0.4, 0.4));
  CHECK(above[0].count() == 16);
  CHECK(above[1].count() == 16);
  auto below = stain_masks(cm, Eigen::Vector2d(0.6, 0.6));
  CHECK(below[0].count() == 0);
  CHECK(below[1].count() == 0);
}

TEST_CASE("stain_masks on a ramp splits at the threshold column") {
  const int w = 100;
  ConcentrationMap cm{w, 1, Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(w, 2)};
  for (int x = 0; x < w; ++x) cm.values(x, 0) = static_cast<double>(x) / (w - 1);
  const auto masks = stain_masks(cm, Eigen::Vector2d(0.5, 0.5));
  for (int x = 0; x < w; ++x) {
    const bool expect = x >= 49;  // ramp crosses 0.5 near the midpoint
    if (std::abs(x - 49) <= 1) continue;
    CHECK(masks[0].data[x] == expect);
  }
}

TEST_CASE("dice identities") {
  SplitMix64 rng(1);
  const BinaryMask x = random_mask(20, 20, 0.4, rng);
  CHECK(dice(x, x) == doctest::Approx(1.0));

  BinaryMask left = mask_of(10, 10, false), right = mask_of(10, 10, false);
  for (int i = 0; i < 50; ++i) left.data[i] = true;
  for (int i = 50; i < 100; ++i) right.data[i] = true;
  CHECK(dice(left, right) == doctest::Approx(0.0));

  CHECK(dice(mask_of(5, 5, false), mask_of(5, 5, false)) == doctest::Approx(1.0));
}

TEST_CASE("dice from known counts") {
  // |X| = 100, |Y| = 50, intersection 25 -> 1/3.
  BinaryMask x = mask_of(20, 10, false), y = mask_of(20, 10, false);
  for (int i = 0; i < 100; ++i) x.data[i] = true;
  for (int i = 75; i < 125; ++i) y.data[i] = true;
  CHECK(dice(x, y) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dice is symmetric and monotone under a growing intersection") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryMask x = random_mask(16, 16, rng.uniform(0.2, 0.8), rng);
    const BinaryMask y = random_mask(16, 16, rng.uniform(0.2, 0.8), rng);
    CHECK(dice(x, y) == doctest::Approx(dice(y, x)).epsilon(1e-12));
  }

  // Fixed |X| = |Y| = 64 with intersection k growing.
  double prev = -1.0;
  for (int k = 0; k <= 64; k += 8) {
    BinaryMask x = mask_of(16, 16, false), y = mask_of(16, 16, false);
    for (int i = 0; i < 64; ++i) x.data[i] = true;
    for (int i = 64 - k; i < 128 - k; ++i) y.data[i] = true;
    const double d = dice(x, y);
    CHECK(d >= prev);
    prev = d;
  }
}

TEST_CASE("dice rejects dimension mismatches") {
  CHECK_THROWS_AS(dice(mask_of(4, 4, true), mask_of(4, 5, true)), DimensionError);
}

TEST_CASE("sdc of identical images is 1 per stain") {
  SplitMix64 rng(3);
  const StainMatrix sm = he_matrix();
  ConcentrationMap cm{32, 32, Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(1024, 2)};
  for (Eigen::Index p = 0; p < 1024; ++p) {
    cm.values(p, 0) = std::max(0.0, rng.uniform(-0.5, 1.2));
    cm.values(p, 1) = std::max(0.0, rng.uniform(-0.5, 1.2));
  }
  const RgbImage img = render(cm, sm);
  const SdcReport r = staining_dice_coefficient(img, img, sm, Eigen::Vector2d(0.15, 0.15));
  CHECK(r.stains[0].dice == doctest::Approx(1.0));
  CHECK(r.stains[1].dice == doctest::Approx(1.0));
  CHECK(r.stains[0].target_positive > 0);
}

TEST_CASE("sdc of white vs stained tissue is 0 with nonzero target counts") {
  const StainMatrix sm = he_matrix();
  ConcentrationMap cm{16, 16, Eigen::Matrix<double, Eigen::Dynamic, 2>::Constant(256, 2, 0.8)};
  const RgbImage target = render(cm, sm);
  const RgbImage white = RgbImage::constant(16, 16, 1.0);
  const SdcReport r = staining_dice_coefficient(white, target, sm, Eigen::Vector2d(0.15, 0.15));
  for (const auto& s : r.stains) {
    CHECK(s.dice == doctest::Approx(0.0));
    CHECK(s.target_positive == 256);
    CHECK(s.virtual_positive == 0);
  }
}

TEST_CASE("sdc half-overlap geometry gives 2/3") {
  // Target stain-0 region covers rows 0..31, virtual covers rows 0..15:
  // dice = 2*(A/2) / (A/2 + A) = 2/3.
  const StainMatrix sm = he_matrix();
  const int w = 32, h = 48;
  auto scene = [&](int stained_rows) {
    ConcentrationMap cm{w, h, Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(w * h, 2)};
    for (int y = 0; y < stained_rows; ++y)
      for (int x = 0; x < w; ++x) cm.values(static_cast<Eigen::Index>(y) * w + x, 0) = 0.9;
    return render(cm, sm);
  };
  const RgbImage target = scene(32);
  const RgbImage virt = scene(16);
  const SdcReport r = staining_dice_coefficient(virt, target, sm, Eigen::Vector2d(0.15, 0.15));
  CHECK(r.stains[0].target_positive == 32 * w);
  CHECK(r.stains[0].virtual_positive == 16 * w);
  CHECK(r.stains[0].intersection == 16 * w);
  CHECK(r.stains[0].dice == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("sdc is invariant to a shared global rescale with rescaled thresholds") {
  SplitMix64 rng(4);
  const StainMatrix sm = he_matrix();
  const int n = 24 * 24;
  ConcentrationMap a{24, 24, Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(n, 2)};
  ConcentrationMap b = a;
  for (Eigen::Index p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s) {
      a.values(p, s) = std::max(0.0, rng.uniform(-0.3, 1.0));
      b.values(p, s) = std::max(0.0, rng.uniform(-0.3, 1.0));
    }
  const double k = 0.6;
  ConcentrationMap ak{24, 24, (a.values * k).eval()};
  ConcentrationMap bk{24, 24, (b.values * k).eval()};

  // eps = 0 keeps the render/deconvolve loop exact so the rescale is global.
  SdcOptions opts;
  opts.eps = 0.0;
  const SdcReport base = staining_dice_coefficient(render(a, sm), render(b, sm), sm,
                                                   Eigen::Vector2d(0.2, 0.2), opts);
  const SdcReport scaled = staining_dice_coefficient(render(ak, sm), render(bk, sm), sm,
                                                     Eigen::Vector2d(0.2 * k, 0.2 * k), opts);
  for (int s = 0; s < 2; ++s)
    CHECK(base.stains[static_cast<std::size_t>(s)].dice ==
          doctest::Approx(scaled.stains[static_cast<std::size_t>(s)].dice).epsilon(1e-12));
}

TEST_CASE("gaussian_stats on tiny cases") {
  FeatureCollection two_same;
  two_same.data.resize(2, 3);
  two_same.data << 1.0, 2.0, 3.0, 1.0, 2.0, 3.0;
  const GaussianStats g = gaussian_stats(two_same);
  CHECK(g.cov.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  FeatureCollection d1;
  d1.data.resize(2, 1);
  d1.data << 0.0, 2.0;
  const GaussianStats g1 = gaussian_stats(d1);
  CHECK(g1.mean[0] == doctest::Approx(1.0));
  CHECK(g1.cov(0, 0) == doctest::Approx(2.0));

  FeatureCollection one;
  one.data.resize(1, 4);
  one.data.setZero();
  CHECK_THROWS_AS(gaussian_stats(one), InsufficientSamplesError);
}

TEST_CASE("gaussian_stats matches a two-pass oracle on random data") {
  SplitMix64 rng(5);
  FeatureCollection f;
  f.data.resize(40, 6);
  for (Eigen::Index i = 0; i < f.data.rows(); ++i)
    for (Eigen::Index j = 0; j < f.data.cols(); ++j) f.data(i, j) = rng.normal();

  const GaussianStats g = gaussian_stats(f);
  // Oracle: explicit loops, no Eigen reductions.
  for (int a = 0; a < 6; ++a) {
    double mean = 0.0;
    for (int i = 0; i < 40; ++i) mean += f.data(i, a);
    mean /= 40.0;
    CHECK(g.mean[a] == doctest::Approx(mean).epsilon(1e-9));
    for (int b = 0; b < 6; ++b) {
      double meanb = 0.0;
      for (int i = 0; i < 40; ++i) meanb += f.data(i, b);
      meanb /= 40.0;
      double cov = 0.0;
      for (int i = 0; i < 40; ++i) cov += (f.data(i, a) - mean) * (f.data(i, b) - meanb);
      cov /= 39.0;
      CHECK(g.cov(a, b) == doctest::Approx(cov).epsilon(1e-9));
    }
  }
}

TEST_CASE("sqrtm_psd fixed points and squaring oracle") {
  CHECK((sqrtm_psd(Eigen::MatrixXd::Identity(4, 4)) - Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Eigen::MatrixXd d = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  const Eigen::MatrixXd r = sqrtm_psd(d);
  CHECK(r(0, 0) == doctest::Approx(2.0));
  CHECK(r(1, 1) == doctest::Approx(3.0));
  CHECK(std::abs(r(0, 1)) < 1e-12);

  SplitMix64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a = random_psd(8, rng);
    const Eigen::MatrixXd s = sqrtm_psd(a);
    CHECK((s * s - a).norm() < 1e-8);
  }
}

TEST_CASE("sqrtm_psd rejects asymmetric input") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(sqrtm_psd(a), InvalidInputError);
}

TEST_CASE("frechet_distance closed-form 1-D cases") {
  GaussianStats g1{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1)};
  GaussianStats g2{Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Identity(1, 1)};
  CHECK(frechet_distance(g1, g1) == doctest::Approx(0.0));
  CHECK(frechet_distance(g1, g2) == doctest::Approx(1.0).epsilon(1e-9));

  GaussianStats g3{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1) * 4.0};
  // (1 + 4 - 2*2) = 1.
  CHECK(frechet_distance(g1, g3) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("frechet_distance properties on random stats") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    GaussianStats g1, g2;
    const int d = 6;
    g1.mean = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
    g2.mean = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
    g1.cov = random_psd(d, rng);
    g2.cov = random_psd(d, rng);

    CHECK(frechet_distance(g1, g1) <= 1e-6);
    CHECK(frechet_distance(g2, g2) <= 1e-6);
    const double ab = frechet_distance(g1, g2);
    const double ba = frechet_distance(g2, g1);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
  }
}

TEST_CASE("frechet_distance equals the 1-D closed form per dimension for diagonal covariances") {
  SplitMix64 rng(8);
  const int d = 5;
  GaussianStats g1, g2;
  g1.mean = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
  g2.mean = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.normal(); });
  Eigen::VectorXd v1 = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.uniform(0.1, 3.0); });
  Eigen::VectorXd v2 = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return rng.uniform(0.1, 3.0); });
  g1.cov = v1.asDiagonal();
  g2.cov = v2.asDiagonal();

  double expect = 0.0;
  for (int i = 0; i < d; ++i) {
    const double dm = g1.mean[i] - g2.mean[i];
    expect += dm * dm + v1[i] + v2[i] - 2.0 * std::sqrt(v1[i] * v2[i]);
  }
  CHECK(frechet_distance(g1, g2) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("frechet_distance rejects dimension mismatches") {
  GaussianStats g1{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2)};
  GaussianStats g2{Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)};
  CHECK_THROWS_AS(frechet_distance(g1, g2), DimensionError);
}

TEST_CASE("toy_feature_extractor is deterministic and input-sensitive") {
  SplitMix64 rng(9);
  RgbImage img;
  img.width = 40;
  img.height = 30;
  img.pixels.resize(img.pixel_count(), 3);
  for (Eigen::Index p = 0; p < img.pixel_count(); ++p)
    for (int c = 0; c < 3; ++c) img.pixels(p, c) = rng.uniform();

  const FeatureCollection a = toy_feature_extractor({img, img}, 16, 42);
  CHECK((a.data.row(0) - a.data.row(1)).cwiseAbs().maxCoeff() == 0.0);

  const FeatureCollection b = toy_feature_extractor({img}, 16, 42);
  CHECK((a.data.row(0) - b.data.row(0)).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(toy_feature_extractor({}, 16, 0), InvalidInputError);
  CHECK_THROWS_AS(toy_feature_extractor({img}, 4, 0), InvalidInputError);
}

TEST_CASE("toy features separate visibly different image distributions") {
  SplitMix64 rng(10);
  auto draw = [&](double lo, double hi) {
    RgbImage img;
    img.width = 32;
    img.height = 32;
    img.pixels.resize(img.pixel_count(), 3);
    for (Eigen::Index p = 0; p < img.pixel_count(); ++p)
      for (int c = 0; c < 3; ++c) img.pixels(p, c) = rng.uniform(lo, hi);
    return img;
  };
  std::vector<RgbImage> bright, dark, bright2;
  for (int i = 0; i < 12; ++i) {
    bright.push_back(draw(0.6, 1.0));
    bright2.push_back(draw(0.6, 1.0));
    dark.push_back(draw(0.0, 0.4));
  }
  const auto fb = gaussian_stats(toy_feature_extractor(bright, 16, 3));
  const auto fb2 = gaussian_stats(toy_feature_extractor(bright2, 16, 3));
  const auto fd = gaussian_stats(toy_feature_extractor(dark, 16, 3));
  CHECK(frechet_distance(fb, fd) > frechet_distance(fb, fb2));
}

TEST_CASE("feature CSV round trip is exact") {
  SplitMix64 rng(11);
  FeatureCollection f;
  f.data.resize(7, 5);
  for (Eigen::Index i = 0; i < 7; ++i)
    for (Eigen::Index j = 0; j < 5; ++j) f.data(i, j) = rng.normal() * std::pow(10.0, rng.uniform(-8, 8));

  const auto path = std::filesystem::temp_directory_path() / "vistain_feat.csv";
  write_features_csv(path.string(), f);
  const FeatureCollection back = read_features_csv(path.string());
  REQUIRE(back.n() == 7);
  REQUIRE(back.d() == 5);
  for (Eigen::Index i = 0; i < 7; ++i)
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(back.data(i, j) == f.data(i, j));
  std::filesystem::remove(path);
}

TEST_CASE("feature CSV parse errors name the offending line") {
  const auto path = std::filesystem::temp_directory_path() / "vistain_feat_bad.csv";
  std::ofstream(path) << "2,3\n1,2,3\n4,5\n";
  try {
    read_features_csv(path.string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  std::ofstream(path) << "bogus\n";
  CHECK_THROWS_AS(read_features_csv(path.string()), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("feature CSV ties into gaussian_stats") {
  const auto path = std::filesystem::temp_directory_path() / "vistain_feat_tiny.csv";
  std::ofstream(path) << "2,1\n0\n2\n";
  const FeatureCollection f = read_features_csv(path.string());
  const GaussianStats g = gaussian_stats(f);
  CHECK(g.mean[0] == doctest::Approx(1.0));
  CHECK(g.cov(0, 0) == doctest::Approx(2.0));
  std::filesystem::remove(path);
}
