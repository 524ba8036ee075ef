#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "birkhoff/fit.hpp"
#include "birkhoff/norming.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/solver.hpp"
#include "birkhoff/vandermonde.hpp"

namespace birkhoff::io {

using Json = nlohmann::ordered_json;

// Decoders throw ParseError on malformed input or schema violations.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);
Json parse_json(const std::string& text);

Json encode(const Polynomial& p);
Polynomial decode_polynomial(const Json& j);

Json encode(const Domain& domain);
Domain decode_domain(const Json& j, std::size_t n);

Json encode(const Scheme& scheme);
Scheme decode_scheme(const Json& j);

Json encode(const SampleSet& samples);
SampleSet decode_samples(const Json& j);

Json encode(const RegularityReport& report);
Json encode(const NormingBoundTrace& trace);
Json encode(const NormingEstimate& estimate);
Json encode(const FitResult& result);
Json encode(const RobustReport& report);

}  // namespace birkhoff::io
