// Generates a synthetic hand-movement corpus in the UCI Libras layout:
// 45 time steps of interleaved (x, y) coordinates in [0, 1], 15 classes,
// 24 instances per class, integer class label in the final column. The
// classes are smooth parametric curves with per-instance phase, scale and
// additive noise, so nearby class ids overlap enough to make the clustering
// nontrivial.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

namespace {

constexpr int kSteps = 45;
constexpr int kClasses = 15;
constexpr int kPerClass = 24;

struct ClassShape {
  int curve = 0;  // 0 ellipse, 1 sweep, 2 figure-eight
  double center_x = 0.5;
  double center_y = 0.5;
  double radius_x = 0.15;
  double radius_y = 0.15;
  double frequency = 1.0;
  double base_phase = 0.0;
};

ClassShape shape_for_class(int label) {
  ClassShape shape;
  const int index = label - 1;
  shape.curve = index % 3;
  shape.center_x = 0.22 + 0.14 * (index % 5);
  shape.center_y = 0.25 + 0.17 * (index / 5);
  shape.radius_x = 0.10 + 0.02 * (index % 4);
  shape.radius_y = 0.08 + 0.02 * ((index / 2) % 4);
  shape.frequency = 0.5 + 0.25 * (index % 6);
  shape.base_phase = 0.35 * index;
  return shape;
}

void write_instance(std::ofstream& out, const ClassShape& shape, int label,
                    std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 0.02);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const double phase = shape.base_phase + 0.5 * unit(rng);
  const double scale = 1.0 + 0.15 * unit(rng);
  const double cx = shape.center_x + 0.03 * unit(rng);
  const double cy = shape.center_y + 0.03 * unit(rng);

  char buffer[32];
  for (int t = 0; t < kSteps; ++t) {
    const double tau = static_cast<double>(t) / (kSteps - 1);
    const double angle = 2.0 * M_PI * shape.frequency * tau + phase;
    double x = 0.0;
    double y = 0.0;
    switch (shape.curve) {
      case 0:
        x = cx + scale * shape.radius_x * std::cos(angle);
        y = cy + scale * shape.radius_y * std::sin(angle);
        break;
      case 1:
        x = cx + scale * shape.radius_x * (2.0 * tau - 1.0);
        y = cy + scale * shape.radius_y * std::sin(angle);
        break;
      default:
        x = cx + scale * shape.radius_x * std::sin(angle);
        y = cy + scale * shape.radius_y * std::sin(2.0 * angle) / 1.5;
        break;
    }
    x = std::clamp(x + noise(rng), 0.0, 1.0);
    y = std::clamp(y + noise(rng), 0.0, 1.0);
    std::snprintf(buffer, sizeof(buffer), "%.5f,%.5f,", x, y);
    out << buffer;
  }
  out << label << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate a synthetic movement corpus in the UCI Libras layout"};
  std::string out_path = "movement_libras.data";
  std::uint64_t seed = 20240815;
  app.add_option("--out", out_path, "output file path");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  std::mt19937_64 rng(seed);
  for (int label = 1; label <= kClasses; ++label) {
    const ClassShape shape = shape_for_class(label);
    for (int i = 0; i < kPerClass; ++i) write_instance(out, shape, label, rng);
  }
  std::cout << "wrote " << kClasses * kPerClass << " rows to " << out_path << "\n";
  return 0;
}
