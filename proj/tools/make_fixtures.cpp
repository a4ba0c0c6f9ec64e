// Regenerates the contents of fixtures/. Run from the repository root:
//   build/tools/make_fixtures [output_dir]
// Output is deterministic, so a rerun leaves committed fixtures unchanged.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "roughsig/gen.hpp"
#include "roughsig/io.hpp"
#include "roughsig/path.hpp"

using namespace roughsig;

namespace {

PathSamples spiral_path(std::size_t rows) {
    const double two_pi = 6.283185307179586476925286766559;
    PathSamples p;
    p.times.resize(rows);
    p.values.resize(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        double t = two_pi * static_cast<double>(k) / static_cast<double>(rows - 1);
        p.times[k] = t;
        p.values[k] = {std::cos(25.0 * t) / 5.0, std::sin(25.0 * t) / 5.0};
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir + "/brownian");

    // High-frequency spiral: level-2 antisymmetric part of its signature
    // accumulates area pi over [0, 2pi].
    write_path_csv_file(dir + "/spiral.csv", spiral_path(100000));

    // Axis-aligned corner: unit step right, then unit step up.
    PathSamples l_path;
    l_path.times = {0.0, 0.5, 1.0};
    l_path.values = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
    write_path_csv_file(dir + "/l_path.csv", l_path);

    // Monotone unit staircase; 1-variation 3.
    PathSamples staircase;
    staircase.times = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    staircase.values = {{0.0}, {1.0}, {2.0}, {3.0}};
    write_path_csv_file(dir + "/staircase.csv", staircase);

    // Seeded Brownian ensemble: d=2, 256 steps on [0,1], base seed 42,
    // trajectory k drawn from seed 42+k.
    GenSpec spec;
    spec.d = 2;
    spec.n = 256;
    spec.T = 1.0;
    spec.seed = 42;
    spec.kind = GenKind::bm;
    for (int k = 0; k < 8; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "/brownian/bm_%04d.csv", k);
        write_path_csv_file(dir + name, sample_bm(spec, static_cast<std::uint64_t>(k)));
    }

    std::cout << "fixtures written to " << dir << "\n";
    return 0;
}
