#include "jfod/io.hpp"

#include <cmath>

namespace jfod::io {

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ParseError(what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(what + " must be finite");
    return v;
}

std::size_t positive_integer(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) throw ParseError(what + " must be a positive integer");
    return j.get<std::size_t>();
}

RealVector real_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array");
    RealVector out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(number(v, what + " entry"));
    return out;
}

std::string schema_version(const json& j) {
    const auto& v = require(j, "schemaVersion");
    if (!v.is_string()) throw ParseError("schemaVersion must be a string");
    if (v.get<std::string>() != kSchemaVersion) throw ParseError("unsupported schemaVersion '" + v.get<std::string>() + "'");
    return v.get<std::string>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers must be [re, im] pairs");
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be non-empty arrays");
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

json family_to_json(const VectorFamily& f) {
    json rows = json::array();
    for (const auto& v : f.vectors()) {
        json row = json::array();
        for (const auto& z : v) row.push_back(complex_to_json(z));
        rows.push_back(std::move(row));
    }
    return rows;
}

VectorFamily family_from_json(const json& j, std::size_t dim) {
    if (!j.is_array()) throw ParseError("a design family must be an array of vectors");
    std::vector<ComplexVector> vs;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != dim) throw ParseError("design vectors must have length dims[j]");
        ComplexVector v;
        for (const auto& z : row) v.push_back(complex_from_json(z));
        vs.push_back(std::move(v));
    }
    return VectorFamily(dim, std::move(vs));
}

json design_to_json(const Design& d) {
    json out = json::array();
    for (const auto& f : d.families()) out.push_back(family_to_json(f));
    return out;
}

json vectors_to_json(const std::vector<RealVector>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x);
    return out;
}

ProblemFile parse_problem(const json& j) {
    ProblemFile f;
    f.schema_version = schema_version(j);
    f.weights = real_array(require(j, "weights"), "weights");
    const auto& dims = require(j, "dims");
    if (!dims.is_array()) throw ParseError("dims must be an array");
    for (const auto& d : dims) f.dims.push_back(positive_integer(d, "dims entry"));
    if (f.weights.empty()) throw ParseError("weights must be non-empty");
    if (f.dims.empty()) throw ParseError("dims must be non-empty");

    const bool has_spectra = j.contains("initialSpectra");
    const bool has_design = j.contains("initialDesign");
    if (has_spectra == has_design) throw ParseError("exactly one of initialSpectra and initialDesign is required");

    if (has_spectra) {
        const auto& s = j.at("initialSpectra");
        if (!s.is_array() || s.size() != f.dims.size())
            throw ParseError("initialSpectra must hold one array per entry of dims");
        std::vector<RealVector> spectra;
        for (std::size_t k = 0; k < s.size(); ++k) {
            auto v = real_array(s[k], "initialSpectra[" + std::to_string(k) + "]");
            if (v.size() != f.dims[k]) throw ParseError("initialSpectra[" + std::to_string(k) + "] must have length dims[" + std::to_string(k) + "]");
            spectra.push_back(std::move(v));
        }
        f.initial_spectra = std::move(spectra);
    } else {
        const auto& d = j.at("initialDesign");
        if (!d.is_array() || d.size() != f.dims.size())
            throw ParseError("initialDesign must hold one matrix per entry of dims");
        std::vector<VectorFamily> families;
        for (std::size_t k = 0; k < d.size(); ++k) families.push_back(family_from_json(d[k], f.dims[k]));
        f.initial_design = std::move(families);
    }

    if (j.contains("seed")) {
        const auto& s = j.at("seed");
        if (!s.is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
        f.seed = s.get<std::uint64_t>();
    }
    return f;
}

GFrameFile parse_gframe_problem(const json& j) {
    GFrameFile f;
    f.schema_version = schema_version(j);
    f.a = matrix_from_json(require(j, "A"));
    if (f.a.rows() != f.a.cols()) throw ParseError("A must be square");
    f.weights = real_array(require(j, "weights"), "weights");
    if (f.weights.empty()) throw ParseError("weights must be non-empty");
    f.analysis_dim = positive_integer(require(j, "analysisDim"), "analysisDim");
    return f;
}

InitialData to_initial_data(const ProblemFile& file) {
    if (file.initial_spectra) {
        ProblemData p{file.weights, file.dims, *file.initial_spectra};
        return initial_data_from_spectra(std::move(p));
    }
    // Check ordering before eigen-decomposition so messages name the field.
    ProblemData shape{file.weights, file.dims, {}};
    for (std::size_t d : file.dims) shape.spectra.emplace_back(d, 0.0);
    shape.validate();
    return initial_data_from_families(file.weights, *file.initial_design);
}

json solution_to_json(const WaterfillSolution& wf, const OptimalSpectra& spectra) {
    json certs = json::array();
    for (const auto& c : wf.certificates) {
        certs.push_back({{"firstRow", c.first_row},
                         {"lastRow", c.last_row},
                         {"lastWeight", c.last_weight},
                         {"constant", c.constant},
                         {"rowMass", c.row_mass},
                         {"majorized", c.majorized},
                         {"finalBlock", c.final_block}});
    }
    return {{"bVector", wf.b},
            {"cuts", wf.cuts},
            {"blockConstants", wf.constants},
            {"blockSizes", wf.sizes},
            {"candidatesTested", wf.candidates_tested},
            {"delta", vectors_to_json(spectra.delta)},
            {"mu", vectors_to_json(spectra.mu)},
            {"nu", vectors_to_json(spectra.nu)},
            {"translation", spectra.translation},
            {"minValue", spectra.min_value},
            {"blocks", certs}};
}

}  // namespace jfod::io
