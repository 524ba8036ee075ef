#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "birkhoff/scheme.hpp"

namespace birkhoff::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kSingular = 2;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Univariate scheme on [0, 1] with one order-k derivative for each k = 0..d.
//   taylor:      every node at 0
//   equidistant: order k at k/d
//   permuted:    equidistant points visited zig-zag: 0, 1, 1/d, (d-1)/d, ...
Scheme univariate_scheme(std::size_t d, std::string_view points);

struct ExperimentRow {
  std::size_t d = 0;
  std::string points;
  double norming = 0.0;
  std::size_t grid_points = 0;
};

std::vector<ExperimentRow> taylor_experiment(std::size_t d_max, std::string_view points,
                                             std::size_t grid_size, std::uint64_t seed);

}  // namespace birkhoff::cli
