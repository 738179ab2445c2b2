#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jfod/descent.hpp"
#include "jfod/errors.hpp"
#include "jfod/gframes.hpp"
#include "jfod/linalg.hpp"
#include "jfod/spectrum.hpp"
#include "jfod/synthesis.hpp"

namespace jfod::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// Malformed input: wrong JSON types, missing fields, inconsistent lengths.
class ParseError : public Error {
public:
    using Error::Error;
};

struct ProblemFile {
    std::string schema_version;
    RealVector weights;
    std::vector<std::size_t> dims;
    std::optional<std::vector<RealVector>> initial_spectra;
    std::optional<std::vector<VectorFamily>> initial_design;  // rows = vectors
    std::optional<std::uint64_t> seed;
};

struct GFrameFile {
    std::string schema_version;
    Matrix a;
    RealVector weights;
    std::size_t analysis_dim = 0;
};

ProblemFile parse_problem(const json& j);
GFrameFile parse_gframe_problem(const json& j);

// Throws InvalidProblem / NonHermitianInput for domain violations.
InitialData to_initial_data(const ProblemFile& file);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json matrix_to_json(const Matrix& m);  // row-major, [re, im] entries
Matrix matrix_from_json(const json& j);
json family_to_json(const VectorFamily& f);  // one row per vector
VectorFamily family_from_json(const json& j, std::size_t dim);
json design_to_json(const Design& d);
json vectors_to_json(const std::vector<RealVector>& v);

json solution_to_json(const WaterfillSolution& wf, const OptimalSpectra& spectra);

}  // namespace jfod::io
