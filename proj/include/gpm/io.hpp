#pragma once

// Document formats for states and subspaces: JSON with complex entries stored
// as [re, im] pairs, canonical x1,p1,... ordering.  Subspace vectors may be
// given in canonical components or as coefficients over the canonical
// annihilation eigenbasis {e_1..e_N, conj(e_1)..conj(e_N)}, which keeps
// fixture files readable as linear combinations of e's.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpm/gaussian_state.hpp"
#include "gpm/subsystems.hpp"

namespace gpm::io {

using Json = nlohmann::ordered_json;

struct StateDocument {
    Eigen::Index n_modes = 0;
    std::optional<RealVector> mean;
    std::optional<RealMatrix> covariance;             // exactly one of covariance
    std::optional<std::vector<double>> spectrum_nu;   // or spectral form present
    std::optional<std::vector<PhaseVector>> spectrum_basis;
    std::map<std::string, std::string> metadata;
};

enum class Coordinates { canonical, eigenbasis };

struct SubspaceDocument {
    Coordinates coordinates = Coordinates::canonical;
    std::vector<PhaseVector> vectors;  // coordinate rows as stored in the file
    std::map<std::string, std::string> metadata;
};

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);

StateDocument parse_state_document(const Json& j);
Json to_json(const StateDocument& doc);
GaussianState to_state(const StateDocument& doc);
StateDocument document_from_state(const GaussianState& state,
                                  std::map<std::string, std::string> metadata = {});

SubspaceDocument parse_subspace_document(const Json& j);
Json to_json(const SubspaceDocument& doc);

// Resolves eigenbasis coordinates against the canonical annihilation basis of
// an n-mode space and normalizes; n_modes must match the state in use.
ModeSubspace to_subspace(const SubspaceDocument& doc, Eigen::Index n_modes);
SubspaceDocument document_from_subspace(const ModeSubspace& sub,
                                        Coordinates coordinates = Coordinates::canonical,
                                        std::map<std::string, std::string> metadata = {});

// Serialization helpers shared by the CLI.
Json complex_to_json(const Complex& z);
Json vector_to_json(const PhaseVector& v);
PhaseVector json_to_vector(const Json& j, const std::string& where);

}  // namespace gpm::io
