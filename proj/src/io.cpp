#include "gpm/io.hpp"

#include <fstream>

namespace gpm::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw DocumentError(where, what);
}

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::map<std::string, std::string> parse_metadata(const Json& j, const std::string& where) {
    std::map<std::string, std::string> meta;
    if (!j.contains("metadata")) return meta;
    const Json& m = j.at("metadata");
    if (!m.is_object()) fail(where + ".metadata", "expected an object of strings");
    for (const auto& [key, value] : m.items()) {
        if (!value.is_string()) fail(where + ".metadata." + key, "expected a string");
        meta[key] = value.get<std::string>();
    }
    return meta;
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path + ", byte " + std::to_string(e.byte), e.what());
    }
}

void write_json_file(const std::string& path, const Json& value) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open file for writing");
    out << value.dump(2) << "\n";
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const PhaseVector& v) {
    Json arr = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(complex_to_json(v(k)));
    return arr;
}

PhaseVector json_to_vector(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of [re, im] pairs");
    PhaseVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& entry = j[k];
        const std::string slot = where + "[" + std::to_string(k) + "]";
        if (!entry.is_array() || entry.size() != 2) fail(slot, "expected an [re, im] pair");
        v(static_cast<Eigen::Index>(k)) =
            Complex{number_at(entry[0], slot + "[0]"), number_at(entry[1], slot + "[1]")};
    }
    return v;
}

StateDocument parse_state_document(const Json& j) {
    if (!j.is_object()) fail("state", "expected an object");
    StateDocument doc;
    if (!j.contains("n_modes") || !j.at("n_modes").is_number_integer()) {
        fail("state.n_modes", "expected an integer");
    }
    doc.n_modes = j.at("n_modes").get<Eigen::Index>();
    if (doc.n_modes < 1) fail("state.n_modes", "must be >= 1");
    const Eigen::Index dim = 2 * doc.n_modes;

    const bool has_cov = j.contains("covariance");
    const bool has_spec = j.contains("spectrum");
    if (has_cov == has_spec) {
        fail("state", "exactly one of 'covariance' or 'spectrum' must be present");
    }

    if (j.contains("mean")) {
        const Json& m = j.at("mean");
        if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != dim) {
            fail("state.mean", "expected an array of length 2*n_modes");
        }
        RealVector mean(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            mean(k) = number_at(m[static_cast<std::size_t>(k)],
                                "state.mean[" + std::to_string(k) + "]");
        }
        doc.mean = std::move(mean);
    }

    if (has_cov) {
        const Json& c = j.at("covariance");
        if (!c.is_array() || static_cast<Eigen::Index>(c.size()) != dim) {
            fail("state.covariance", "expected a 2N x 2N array of rows");
        }
        RealMatrix cov(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            const Json& row = c[static_cast<std::size_t>(r)];
            const std::string slot = "state.covariance[" + std::to_string(r) + "]";
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
                fail(slot, "expected a row of length 2*n_modes");
            }
            for (Eigen::Index cix = 0; cix < dim; ++cix) {
                cov(r, cix) = number_at(row[static_cast<std::size_t>(cix)],
                                        slot + "[" + std::to_string(cix) + "]");
            }
        }
        doc.covariance = std::move(cov);
    } else {
        const Json& s = j.at("spectrum");
        if (!s.is_object() || !s.contains("nu") || !s.at("nu").is_array()) {
            fail("state.spectrum", "expected an object with an array 'nu'");
        }
        std::vector<double> nu;
        for (std::size_t k = 0; k < s.at("nu").size(); ++k) {
            nu.push_back(number_at(s.at("nu")[k], "state.spectrum.nu[" + std::to_string(k) + "]"));
        }
        if (static_cast<Eigen::Index>(nu.size()) != doc.n_modes) {
            fail("state.spectrum.nu", "length must equal n_modes");
        }
        doc.spectrum_nu = std::move(nu);
        if (s.contains("basis")) {
            const Json& b = s.at("basis");
            if (!b.is_array() || static_cast<Eigen::Index>(b.size()) != doc.n_modes) {
                fail("state.spectrum.basis", "expected n_modes vectors");
            }
            std::vector<PhaseVector> basis;
            for (std::size_t k = 0; k < b.size(); ++k) {
                PhaseVector v =
                    json_to_vector(b[k], "state.spectrum.basis[" + std::to_string(k) + "]");
                if (v.size() != dim) {
                    fail("state.spectrum.basis[" + std::to_string(k) + "]",
                         "vector length must be 2*n_modes");
                }
                basis.push_back(std::move(v));
            }
            doc.spectrum_basis = std::move(basis);
        }
    }
    doc.metadata = parse_metadata(j, "state");
    return doc;
}

Json to_json(const StateDocument& doc) {
    Json j;
    j["n_modes"] = doc.n_modes;
    if (doc.mean) {
        Json m = Json::array();
        for (Eigen::Index k = 0; k < doc.mean->size(); ++k) m.push_back((*doc.mean)(k));
        j["mean"] = std::move(m);
    }
    if (doc.covariance) {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < doc.covariance->rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < doc.covariance->cols(); ++c) {
                row.push_back((*doc.covariance)(r, c));
            }
            rows.push_back(std::move(row));
        }
        j["covariance"] = std::move(rows);
    }
    if (doc.spectrum_nu) {
        Json s;
        s["nu"] = *doc.spectrum_nu;
        if (doc.spectrum_basis) {
            Json b = Json::array();
            for (const auto& v : *doc.spectrum_basis) b.push_back(vector_to_json(v));
            s["basis"] = std::move(b);
        }
        j["spectrum"] = std::move(s);
    }
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j;
}

GaussianState to_state(const StateDocument& doc) {
    GaussianState state = [&] {
        if (doc.covariance) return state_from_covariance(*doc.covariance);
        if (doc.spectrum_basis) return state_from_spectrum(*doc.spectrum_nu, *doc.spectrum_basis);
        return state_from_spectrum(*doc.spectrum_nu);
    }();
    if (doc.mean) state.mean = *doc.mean;
    return state;
}

StateDocument document_from_state(const GaussianState& state,
                                  std::map<std::string, std::string> metadata) {
    StateDocument doc;
    doc.n_modes = state.n_modes();
    if (state.mean.norm() > 0.0) doc.mean = state.mean;
    doc.covariance = state.covariance;
    doc.metadata = std::move(metadata);
    return doc;
}

SubspaceDocument parse_subspace_document(const Json& j) {
    if (!j.is_object()) fail("subspace", "expected an object");
    SubspaceDocument doc;
    if (!j.contains("coordinates") || !j.at("coordinates").is_string()) {
        fail("subspace.coordinates", "expected 'canonical' or 'eigenbasis'");
    }
    const std::string coords = j.at("coordinates").get<std::string>();
    if (coords == "canonical") {
        doc.coordinates = Coordinates::canonical;
    } else if (coords == "eigenbasis") {
        doc.coordinates = Coordinates::eigenbasis;
    } else {
        fail("subspace.coordinates", "expected 'canonical' or 'eigenbasis'");
    }
    if (!j.contains("vectors") || !j.at("vectors").is_array() || j.at("vectors").empty()) {
        fail("subspace.vectors", "expected a non-empty array of vectors");
    }
    for (std::size_t k = 0; k < j.at("vectors").size(); ++k) {
        doc.vectors.push_back(
            json_to_vector(j.at("vectors")[k], "subspace.vectors[" + std::to_string(k) + "]"));
    }
    for (const auto& v : doc.vectors) {
        if (v.size() != doc.vectors.front().size()) {
            fail("subspace.vectors", "vectors must share one length");
        }
    }
    doc.metadata = parse_metadata(j, "subspace");
    return doc;
}

Json to_json(const SubspaceDocument& doc) {
    Json j;
    j["coordinates"] = doc.coordinates == Coordinates::canonical ? "canonical" : "eigenbasis";
    Json vectors = Json::array();
    for (const auto& v : doc.vectors) vectors.push_back(vector_to_json(v));
    j["vectors"] = std::move(vectors);
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j;
}

ModeSubspace to_subspace(const SubspaceDocument& doc, Eigen::Index n_modes) {
    const Eigen::Index dim = 2 * n_modes;
    std::vector<PhaseVector> vectors;
    vectors.reserve(doc.vectors.size());
    for (std::size_t k = 0; k < doc.vectors.size(); ++k) {
        const PhaseVector& row = doc.vectors[k];
        if (row.size() != dim) {
            fail("subspace.vectors[" + std::to_string(k) + "]",
                 "length does not match the state's 2*n_modes");
        }
        if (doc.coordinates == Coordinates::canonical) {
            vectors.push_back(row);
        } else {
            // Coefficients over {e_1..e_N, conj(e_1)..conj(e_N)}.
            PhaseVector v = PhaseVector::Zero(dim);
            for (Eigen::Index m = 0; m < n_modes; ++m) {
                const PhaseVector e = annihilation_vector(n_modes, m);
                v += row(m) * e + row(n_modes + m) * e.conjugate();
            }
            vectors.push_back(std::move(v));
        }
    }
    return ModeSubspace::from_vectors(vectors, n_modes);
}

SubspaceDocument document_from_subspace(const ModeSubspace& sub, Coordinates coordinates,
                                        std::map<std::string, std::string> metadata) {
    SubspaceDocument doc;
    doc.coordinates = coordinates;
    doc.metadata = std::move(metadata);
    const Eigen::Index n = sub.ambient_modes();
    const auto form = symplectic_form(n);
    for (const auto& v : sub.basis()) {
        if (coordinates == Coordinates::canonical) {
            doc.vectors.push_back(v);
        } else {
            PhaseVector row(2 * n);
            for (Eigen::Index m = 0; m < n; ++m) {
                const PhaseVector e = annihilation_vector(n, m);
                row(m) = symplectic_product(e, v, form);
                row(n + m) = -symplectic_product(e.conjugate(), v, form);
            }
            doc.vectors.push_back(std::move(row));
        }
    }
    return doc;
}

}  // namespace gpm::io
