#include "gpm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpm/entanglement.hpp"
#include "gpm/fermionic.hpp"
#include "gpm/io.hpp"
#include "gpm/oracle.hpp"
#include "gpm/partners.hpp"
#include "gpm/sweep.hpp"
#include "gpm/tolerances.hpp"

namespace gpm::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUnphysical = 2;
constexpr int kInconsistent = 3;

using io::Json;

struct Settings {
    // GPM_TOLERANCE overrides the physicality/agreement tolerance used for
    // the CLI's pass/fail decisions; library-internal tolerances are fixed.
    double tolerance = tol::physical;
};

Settings settings_from_env() {
    Settings s;
    if (const char* env = std::getenv("GPM_TOLERANCE")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && value > 0.0) s.tolerance = value;
    }
    return s;
}

std::string fmt12(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

Json report_to_json(const oracle::VerificationReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json entry;
        entry["name"] = c.name;
        entry["passed"] = c.passed;
        entry["residual"] = c.residual;
        entry["tolerance"] = c.tolerance;
        checks.push_back(std::move(entry));
    }
    Json j;
    j["checks"] = std::move(checks);
    j["all_passed"] = report.all_passed();
    return j;
}

Json validity_to_json(const ValidityReport& report, double tolerance) {
    Json j;
    j["is_symmetric"] = report.is_symmetric;
    j["is_positive_definite"] = report.is_positive_definite;
    j["min_symplectic_eigenvalue"] = report.min_symplectic_eigenvalue;
    j["is_physical"] = report.min_symplectic_eigenvalue >= 1.0 - tolerance;
    j["is_pure"] = report.is_pure;
    return j;
}

// Largest |nu_main - nu_oracle| between the main spectrum route and the
// Williamson oracle, for --verify on validate/spectrum.
oracle::VerificationReport spectrum_agreement(const GaussianState& state) {
    oracle::VerificationReport report;
    const auto main_nu = symplectic_spectrum(complex_structure(state)).values();
    const auto oracle_nu = oracle::williamson_values(state.covariance);
    double gap = main_nu.size() == oracle_nu.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; gap < 1.0 && k < main_nu.size(); ++k) {
        gap = std::max(gap, std::abs(main_nu[k] - oracle_nu[k]));
    }
    report.add("spectrum_vs_williamson", gap, 1e-8);
    return report;
}

oracle::VerificationReport pt_agreement(const GaussianState& state, const ModeSubspace& a) {
    oracle::VerificationReport report;
    const auto main_nu = pt_spectrum(partial_transpose(complex_structure(state), a)).values();
    const auto oracle_nu = oracle::dense_pt_eigensolve(state, a).values();
    double gap = main_nu.size() == oracle_nu.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; gap < 1.0 && k < main_nu.size(); ++k) {
        gap = std::max(gap, std::abs(main_nu[k] - oracle_nu[k]));
    }
    report.add("pt_spectrum_vs_dense_oracle", gap, 1e-8);
    return report;
}

GaussianState load_state(const std::string& path) {
    return io::to_state(io::parse_state_document(io::load_json_file(path)));
}

ModeSubspace load_subspace(const std::string& path, const GaussianState& state) {
    return io::to_subspace(io::parse_subspace_document(io::load_json_file(path)),
                           state.n_modes());
}

void require_physical(const GaussianState& state, double tolerance) {
    const auto report = validate_state(state);
    if (!(report.min_symplectic_eigenvalue >= 1.0 - tolerance)) {
        throw UnphysicalStateError("state is unphysical (min symplectic eigenvalue " +
                                   fmt12(report.min_symplectic_eigenvalue) + " < 1)");
    }
}

// ----------------------------------------------------------------------------
// Command handlers.  Each returns the exit code and writes one JSON object.

int cmd_validate(const std::string& state_path, bool verify, const Settings& settings,
                 std::ostream& out) {
    const GaussianState state = load_state(state_path);
    const auto report = validate_state(state);
    Json j;
    j["command"] = "validate";
    j["report"] = validity_to_json(report, settings.tolerance);
    if (report.is_physical) {
        j["purity"] = purity(complex_structure(state));
    } else {
        j["purity"] = Json();
    }
    int code = j["report"]["is_physical"].get<bool>() ? kOk : kUnphysical;
    if (verify) {
        const auto agreement = spectrum_agreement(state);
        j["verify"] = report_to_json(agreement);
        if (!agreement.all_passed()) code = kInconsistent;
    }
    out << j.dump(2) << "\n";
    return code;
}

int cmd_spectrum(const std::string& state_path, bool verify, std::ostream& out) {
    const GaussianState state = load_state(state_path);
    const auto spectrum = symplectic_spectrum(complex_structure(state));
    Json j;
    j["command"] = "spectrum";
    j["nu"] = spectrum.values();
    Json vectors = Json::array();
    for (const auto& p : spectrum.pairs) vectors.push_back(io::vector_to_json(p.vector));
    j["eigenvectors"] = std::move(vectors);
    int code = kOk;
    if (verify) {
        const auto agreement = spectrum_agreement(state);
        j["verify"] = report_to_json(agreement);
        if (!agreement.all_passed()) code = kInconsistent;
    }
    out << j.dump(2) << "\n";
    return code;
}

int cmd_partner(const std::string& state_path, const std::string& sub_path, PartnerKind kind,
                bool verify, bool eigen_coords, const Settings& settings, std::ostream& out) {
    const GaussianState state = load_state(state_path);
    require_physical(state, settings.tolerance);
    const ModeSubspace a = load_subspace(sub_path, state);
    const ComplexStructure j = complex_structure(state);

    const PartnerResult result = [&] {
        switch (kind) {
            case PartnerKind::pure: return pure_partner(a, j);
            case PartnerKind::correlation: return correlation_partner(a, j);
            default: return entanglement_partner(a, j);
        }
    }();

    Json doc;
    doc["command"] = "partner";
    doc["kind"] = kind == PartnerKind::pure         ? "pure"
                  : kind == PartnerKind::correlation ? "correlation"
                                                     : "entanglement";
    doc["empty"] = result.empty;
    doc["mode_count"] = result.mode_count;
    doc["diagnostics"] = result.diagnostics;
    if (!result.empty) {
        doc["partner"] = io::to_json(io::document_from_subspace(
            result.partner,
            eigen_coords ? io::Coordinates::eigenbasis : io::Coordinates::canonical));
    }
    int code = kOk;
    if (verify) {
        const auto report = oracle::verify_partner(state, a, result.partner, kind);
        doc["verify"] = report_to_json(report);
        if (!report.all_passed()) code = kInconsistent;
    }
    out << doc.dump(2) << "\n";
    return code;
}

int cmd_negativity(const std::string& state_path, const std::string& sub_path, bool verify,
                   const Settings& settings, std::ostream& out) {
    const GaussianState state = load_state(state_path);
    require_physical(state, settings.tolerance);
    const ModeSubspace a = load_subspace(sub_path, state);
    const auto spectrum = pt_spectrum(partial_transpose(complex_structure(state), a));

    double total = 0.0;
    for (std::size_t idx : spectrum.subunity) total += -std::log2(spectrum.pairs[idx].nu);

    Json j;
    j["command"] = "negativity";
    j["log_negativity"] = total;
    j["pt_nu"] = spectrum.values();
    j["subunity"] = spectrum.subunity_values();
    j["non_ppt"] = !spectrum.subunity.empty();
    int code = kOk;
    if (verify) {
        const auto agreement = pt_agreement(state, a);
        j["verify"] = report_to_json(agreement);
        if (!agreement.all_passed()) code = kInconsistent;
    }
    out << j.dump(2) << "\n";
    return code;
}

// ----------------------------------------------------------------------------
// Bundled worked examples (also the backbone of the acceptance suite).

PhaseVector eigen_combo(Eigen::Index n_modes,
                        std::initializer_list<std::pair<int, Complex>> terms) {
    // 1-based index, negative for the conjugate member.
    PhaseVector v = PhaseVector::Zero(2 * n_modes);
    for (const auto& [index, coeff] : terms) {
        PhaseVector e = annihilation_vector(n_modes, std::abs(index) - 1);
        if (index < 0) e = e.conjugate();
        v += coeff * e;
    }
    return v;
}

struct ExampleRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

ExampleRow make_row(std::string name, double residual, double tolerance, std::string detail) {
    ExampleRow row;
    row.name = std::move(name);
    row.residual = residual;
    row.tolerance = tolerance;
    row.passed = residual <= tolerance;
    row.detail = std::move(detail);
    return row;
}

std::vector<ExampleRow> worked_examples() {
    std::vector<ExampleRow> rows;
    const double s3 = std::sqrt(3.0);

    {  // commutator of the oscillator pair (-sqrt(hbar/m w) x-dir, sqrt(hbar m w) p-dir)
        const auto form = symplectic_form(2);
        PhaseVector g1 = PhaseVector::Zero(4);
        g1(0) = -1.0;
        PhaseVector g2 = PhaseVector::Zero(4);
        g2(1) = 1.0;
        const Complex value = symplectic_product(g1, g2, form);
        rows.push_back(make_row("commutator-oscillator-pair", std::abs(value - Complex{0, -1}),
                                tol::equality, "product = " + fmt12(value.real()) + (value.imag() < 0 ? "" : "+") + fmt12(value.imag()) + "i"));
    }
    {  // single-mode partner in a 3-mode pure state
        const auto state = state_from_spectrum(std::vector<double>{1, 1, 1});
        const auto j = complex_structure(state);
        const auto a = ModeSubspace::from_vectors({eigen_combo(3, {{1, 2.0}, {-3, -s3}})}, 3);
        const auto partner = pure_partner(a, j);
        const auto expected =
            ModeSubspace::from_vectors({eigen_combo(3, {{1, s3}, {-3, -2.0}})}, 3);
        const double dist = span_distance(partner.partner, expected);
        rows.push_back(make_row("pure-partner-single-mode", std::max(dist, partner.diagnostics),
                                1e-10, "span distance " + fmt12(dist)));
    }
    {  // two correlated modes in a 4-mode pure state
        const auto state = state_from_spectrum(std::vector<double>{1, 1, 1, 1});
        const auto j = complex_structure(state);
        const auto a = ModeSubspace::from_vectors({eigen_combo(4, {{1, 2.0}, {-3, -s3}}),
                                                   eigen_combo(4, {{2, 2.0}, {-4, -s3}})},
                                                  4);
        const auto nu = symplectic_spectrum(restricted_structure(j, a)).values();
        const double nu_gap = std::max(std::abs(nu[0] - 7.0), std::abs(nu[1] - 7.0));
        const auto partner = pure_partner(a, j);
        const auto expected =
            ModeSubspace::from_vectors({eigen_combo(4, {{1, s3}, {-3, -2.0}}),
                                        eigen_combo(4, {{2, s3}, {-4, -2.0}})},
                                       4);
        const double dist = span_distance(partner.partner, expected);
        rows.push_back(make_row("pure-partner-two-mode", std::max(nu_gap, dist), 1e-9,
                                "nu = (" + fmt12(nu[0]) + ", " + fmt12(nu[1]) + ")"));
    }
    {  // one correlated + one uncorrelated direction in a 4-mode pure state
        const auto state = state_from_spectrum(std::vector<double>{1, 1, 1, 1});
        const auto j = complex_structure(state);
        const double s5 = std::sqrt(5.0);
        const auto a = ModeSubspace::from_vectors(
            {eigen_combo(4, {{1, 2.0}, {-3, -s3}}),
             eigen_combo(4, {{-1, -2.0 * s3 / s5}, {2, 1.0 / s5}, {3, 4.0 / s5}})},
            4);
        const auto nu = symplectic_spectrum(restricted_structure(j, a)).values();
        const double nu_gap = std::max(std::abs(nu[0] - 1.0), std::abs(nu[1] - 2.2));
        const auto partner = pure_partner(a, j);
        const auto expected = ModeSubspace::from_vectors(
            {eigen_combo(4, {{-1, s3}, {2, 2.0}, {3, -2.0}})}, 4);
        const double dist = span_distance(partner.partner, expected);
        const double count_gap = partner.mode_count == 1 ? 0.0 : 1.0;
        rows.push_back(make_row("pure-partner-rank-deficient",
                                std::max({nu_gap, dist, count_gap}), 1e-9,
                                "nu = (" + fmt12(nu[0]) + ", " + fmt12(nu[1]) + ")"));
    }

    const auto j6_state = state_from_spectrum(std::vector<double>{2, 2, 3});
    const auto j6 = complex_structure(j6_state);
    {  // correlation partner, uncorrelated input
        const auto a = ModeSubspace::from_vectors({eigen_combo(3, {{1, 1.0}, {2, 1.0}})}, 3);
        const auto cp = correlation_partner(a, j6);
        rows.push_back(make_row("correlation-partner-empty",
                                cp.empty && cp.mode_count == 0 ? 0.0 : 1.0, 0.5,
                                "mode_count = " + std::to_string(cp.mode_count)));
    }
    {  // correlation partner across two eigenvalue groups
        const auto a = ModeSubspace::from_vectors({eigen_combo(3, {{1, 1.0}, {3, 1.0}})}, 3);
        const auto cp = correlation_partner(a, j6);
        const auto expected =
            ModeSubspace::from_vectors({eigen_combo(3, {{1, 1.0}, {3, -1.0}})}, 3);
        const double dist = cp.empty ? 1.0 : span_distance(cp.partner, expected);
        const double count_gap = cp.mode_count == 1 ? 0.0 : 1.0;
        rows.push_back(make_row("correlation-partner-one-mode", std::max(dist, count_gap), 1e-9,
                                "span distance " + fmt12(dist)));
    }
    {  // correlation partner with a conjugate-mixing input
        const auto a =
            ModeSubspace::from_vectors({eigen_combo(3, {{1, 1.0}, {-1, 1.0}, {2, 1.0}})}, 3);
        const auto cp = correlation_partner(a, j6);
        const auto expected = ModeSubspace::from_vectors(
            {eigen_combo(3, {{-1, 1.0}, {2, 1.0}, {-2, -1.0}})}, 3);
        const double dist = cp.empty ? 1.0 : span_distance(cp.partner, expected);
        const double count_gap = cp.mode_count == 1 ? 0.0 : 1.0;
        rows.push_back(make_row("correlation-partner-conjugate-mix", std::max(dist, count_gap),
                                1e-9, "span distance " + fmt12(dist)));
    }
    {  // correlation partner spanning two modes
        const auto a = ModeSubspace::from_vectors(
            {(1.0 / std::sqrt(2.0)) *
             eigen_combo(3, {{1, 1.0}, {-1, 1.0}, {2, 1.0}, {3, 1.0}})},
            3);
        const auto cp = correlation_partner(a, j6);
        const auto expected = ModeSubspace::from_vectors(
            {eigen_combo(3, {{1, 1.0}, {-1, 1.0}, {2, -1.0}, {3, 1.0}}),
             eigen_combo(3, {{1, 1.0}, {-1, -1.0}, {-2, 1.0}, {3, -2.0}, {-3, 1.0}})},
            3);
        const double dist = cp.empty ? 1.0 : span_distance(cp.partner, expected);
        const double count_gap = cp.mode_count == 2 ? 0.0 : 1.0;
        rows.push_back(make_row("correlation-partner-two-mode", std::max(dist, count_gap), 1e-9,
                                "mode_count = " + std::to_string(cp.mode_count)));
    }
    {  // entanglement partner of the squeezed direction in the 3-mode mixed state
        const auto a = ModeSubspace::from_vectors({eigen_combo(3, {{1, 2.0}, {-3, -s3}})}, 3);
        const auto spectrum = pt_spectrum(partial_transpose(j6, a));
        const double nu1 = spectrum.pairs.front().nu;
        const double nu_gap = std::abs(nu1 - (35.0 - std::sqrt(1201.0)) / 2.0);
        const double count_gap = spectrum.subunity.size() == 1 ? 0.0 : 1.0;
        const auto ep = entanglement_partner(a, j6);
        const auto expected =
            ModeSubspace::from_vectors({eigen_combo(3, {{-1, s3}, {3, -2.0}})}, 3);
        const double dist = ep.empty ? 1.0 : span_distance(ep.partner, expected);
        const auto back = entanglement_partner(ep.partner, j6);
        const double recip = back.empty ? 1.0 : span_distance(back.partner, a);
        rows.push_back(make_row("entanglement-partner-single-mode",
                                std::max({nu_gap, count_gap, dist, recip}), 1e-8,
                                "subunity nu = " + fmt12(nu1)));
    }
    {  // two-mode entanglement partner in the 4-mode mixed state
        const auto state = state_from_spectrum(std::vector<double>{2, 2, 3, 4});
        const auto j = complex_structure(state);
        const auto a = ModeSubspace::from_vectors({eigen_combo(4, {{1, 2.0}, {-3, -s3}}),
                                                   eigen_combo(4, {{2, 2.0}, {-4, -s3}})},
                                                  4);
        const auto sub = pt_spectrum(partial_transpose(j, a)).subunity_values();
        const double expected1 = (35.0 - std::sqrt(1201.0)) / 2.0;
        const double expected2 = 21.0 - std::sqrt(433.0);
        double nu_gap = sub.size() == 2 ? 0.0 : 1.0;
        if (sub.size() == 2) {
            nu_gap = std::max(std::abs(sub[0] - expected1), std::abs(sub[1] - expected2));
        }
        const auto ep = entanglement_partner(a, j);
        const double count_gap = ep.partner.mode_count() == 2 ? 0.0 : 1.0;
        rows.push_back(make_row("entanglement-partner-two-mode",
                                std::max({nu_gap, count_gap, ep.diagnostics}), 1e-9,
                                "subunity nu = (" + fmt12(sub.empty() ? 0.0 : sub[0]) + ", " +
                                    fmt12(sub.size() > 1 ? sub[1] : 0.0) + ")"));
    }
    {  // purity of the diagonal two-mode spectrum
        const auto state = state_from_spectrum(std::vector<double>{2, 3});
        const double p = purity(complex_structure(state));
        rows.push_back(make_row("purity-two-mode-thermal", std::abs(p - 1.0 / 6.0), tol::equality,
                                "purity = " + fmt12(p)));
    }
    return rows;
}

int cmd_paper_examples(std::ostream& out) {
    const auto rows = worked_examples();
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.name.size());
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.passed;
        out << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(static_cast<int>(width))
            << r.name << "  residual " << std::scientific << std::setprecision(3) << r.residual
            << "  tolerance " << r.tolerance << std::defaultfloat << "  " << r.detail << "\n";
    }
    out << (all ? "all " : "FAILURES among ") << rows.size() << " worked examples"
        << (all ? " pass" : "") << "\n";
    return all ? kOk : kInconsistent;
}

// ----------------------------------------------------------------------------
// Batch mode: every *.json job in a directory, outputs written alongside.

int run_job(const Json& job, const Settings& settings, std::ostream& out);

int cmd_batch(const std::string& dir, bool serial, const Settings& settings, std::ostream& out,
              std::ostream& err) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > 5 &&
            name.substr(name.size() - 5) == ".json" &&
            name.find(".out.json") == std::string::npos) {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "batch: no job files in " << dir << "\n";
        return kUsage;
    }

    struct JobResult {
        int code = kOk;
        std::string output;
    };
    const auto results = run_sweep(
        files.size(),
        [&](std::size_t k) {
            JobResult r;
            std::ostringstream sink;
            try {
                r.code = run_job(io::load_json_file(files[k]), settings, sink);
            } catch (const DocumentError& e) {
                sink << Json{{"error", e.what()}}.dump(2) << "\n";
                r.code = kUsage;
            } catch (const Error& e) {
                sink << Json{{"error", e.what()}}.dump(2) << "\n";
                r.code = kInconsistent;
            }
            r.output = sink.str();
            return r;
        },
        !serial);

    int worst = kOk;
    for (std::size_t k = 0; k < files.size(); ++k) {
        const std::string out_path = files[k].substr(0, files[k].size() - 5) + ".out.json";
        std::ofstream sink(out_path);
        sink << results[k].output;
        out << files[k] << " -> exit " << results[k].code << "\n";
        worst = std::max(worst, results[k].code);
    }
    return worst;
}

int run_job(const Json& job, const Settings& settings, std::ostream& out) {
    if (!job.is_object() || !job.contains("command") || !job.at("command").is_string()) {
        throw DocumentError("job.command", "expected a command string");
    }
    const std::string command = job.at("command").get<std::string>();
    const bool verify = job.value("verify", false);

    const auto state_doc = [&] {
        if (!job.contains("state")) throw DocumentError("job.state", "missing state document");
        return io::parse_state_document(job.at("state"));
    };

    if (command == "validate") {
        const GaussianState state = io::to_state(state_doc());
        const auto report = validate_state(state);
        Json j;
        j["command"] = "validate";
        j["report"] = validity_to_json(report, settings.tolerance);
        out << j.dump(2) << "\n";
        return j["report"]["is_physical"].get<bool>() ? kOk : kUnphysical;
    }
    if (command == "spectrum") {
        const GaussianState state = io::to_state(state_doc());
        Json j;
        j["command"] = "spectrum";
        j["nu"] = symplectic_spectrum(complex_structure(state)).values();
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (command == "partner" || command == "negativity") {
        const GaussianState state = io::to_state(state_doc());
        require_physical(state, settings.tolerance);
        if (!job.contains("subsystem")) {
            throw DocumentError("job.subsystem", "missing subspace document");
        }
        const ModeSubspace a =
            io::to_subspace(io::parse_subspace_document(job.at("subsystem")), state.n_modes());
        if (command == "negativity") {
            const auto spectrum = pt_spectrum(partial_transpose(complex_structure(state), a));
            double total = 0.0;
            for (std::size_t idx : spectrum.subunity) total += -std::log2(spectrum.pairs[idx].nu);
            Json j;
            j["command"] = "negativity";
            j["log_negativity"] = total;
            j["subunity"] = spectrum.subunity_values();
            if (verify) j["verify"] = report_to_json(pt_agreement(state, a));
            out << j.dump(2) << "\n";
            return kOk;
        }
        const std::string kind_name = job.value("kind", std::string("pure"));
        const PartnerKind kind = kind_name == "pure"          ? PartnerKind::pure
                                 : kind_name == "correlation" ? PartnerKind::correlation
                                                              : PartnerKind::entanglement;
        const ComplexStructure j = complex_structure(state);
        const PartnerResult result = kind == PartnerKind::pure ? pure_partner(a, j)
                                     : kind == PartnerKind::correlation
                                         ? correlation_partner(a, j)
                                         : entanglement_partner(a, j);
        Json doc;
        doc["command"] = "partner";
        doc["kind"] = kind_name;
        doc["empty"] = result.empty;
        doc["mode_count"] = result.mode_count;
        if (!result.empty) {
            doc["partner"] = io::to_json(io::document_from_subspace(result.partner));
        }
        if (verify) {
            const auto report = oracle::verify_partner(state, a, result.partner, kind);
            doc["verify"] = report_to_json(report);
            out << doc.dump(2) << "\n";
            return report.all_passed() ? kOk : kInconsistent;
        }
        out << doc.dump(2) << "\n";
        return kOk;
    }
    throw DocumentError("job.command", "unknown command '" + command + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const Settings settings = settings_from_env();

    CLI::App app{"Partner-mode analysis for bosonic Gaussian states"};
    app.require_subcommand(0, 1);

    std::string state_path, sub_path, batch_dir, batch_flag_dir;
    bool verify = false;
    bool eigen_coords = false;
    bool serial = false;
    bool kind_pure = false, kind_corr = false, kind_ent = false;

    auto* validate = app.add_subcommand("validate", "check a state document for physicality");
    validate->add_option("--state", state_path, "state document")->required();
    validate->add_flag("--verify", verify, "cross-check against the brute-force oracle");

    auto* spectrum = app.add_subcommand("spectrum", "symplectic spectrum of a state");
    spectrum->add_option("--state", state_path, "state document")->required();
    spectrum->add_flag("--verify", verify, "cross-check against the brute-force oracle");

    auto* partner = app.add_subcommand("partner", "partner subsystem of a mode set");
    partner->add_option("--state", state_path, "state document")->required();
    partner->add_option("--subsystem", sub_path, "subspace document")->required();
    auto* pure_flag = partner->add_flag("--pure", kind_pure, "pure-state partner");
    auto* corr_flag = partner->add_flag("--correlation", kind_corr, "correlation partner");
    auto* ent_flag = partner->add_flag("--entanglement", kind_ent, "entanglement partner");
    pure_flag->excludes(corr_flag)->excludes(ent_flag);
    corr_flag->excludes(ent_flag);
    partner->add_flag("--verify", verify, "cross-check against the brute-force oracle");
    partner->add_flag("--eigenbasis", eigen_coords, "emit spans in eigenbasis coordinates");

    auto* negativity = app.add_subcommand("negativity", "logarithmic negativity across a cut");
    negativity->add_option("--state", state_path, "state document")->required();
    negativity->add_option("--subsystem", sub_path, "subspace document")->required();
    negativity->add_flag("--verify", verify, "cross-check against the brute-force oracle");

    auto* examples =
        app.add_subcommand("paper-examples", "replay the bundled worked examples");

    auto* batch = app.add_subcommand("batch", "run every job document in a directory");
    batch->add_option("dir", batch_dir, "directory of *.json job files")->required();
    batch->add_flag("--serial", serial, "disable parallel processing");

    // --batch dir/ at the top level is a synonym for the batch subcommand
    app.add_option("--batch", batch_flag_dir, "directory of *.json job files");
    app.add_flag("--serial", serial, "disable parallel batch processing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(state_path, verify, settings, out);
        if (spectrum->parsed()) return cmd_spectrum(state_path, verify, out);
        if (partner->parsed()) {
            if (!kind_pure && !kind_corr && !kind_ent) {
                err << "usage error: partner requires one of --pure, --correlation, "
                       "--entanglement\n";
                return kUsage;
            }
            const PartnerKind kind = kind_pure   ? PartnerKind::pure
                                     : kind_corr ? PartnerKind::correlation
                                                 : PartnerKind::entanglement;
            return cmd_partner(state_path, sub_path, kind, verify, eigen_coords, settings, out);
        }
        if (negativity->parsed()) {
            return cmd_negativity(state_path, sub_path, verify, settings, out);
        }
        if (examples->parsed()) return cmd_paper_examples(out);
        if (batch->parsed()) return cmd_batch(batch_dir, serial, settings, out, err);
        if (!batch_flag_dir.empty()) {
            return cmd_batch(batch_flag_dir, serial, settings, out, err);
        }
    } catch (const DocumentError& e) {
        err << "document error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnphysicalStateError& e) {
        err << "unphysical input: " << e.what() << "\n";
        return kUnphysical;
    } catch (const WrongPurityError& e) {
        err << "inadmissible input: " << e.what() << "\n";
        return kUnphysical;
    } catch (const NonOrthonormalBasisError& e) {
        err << "inadmissible input: " << e.what() << "\n";
        return kUnphysical;
    } catch (const DegenerateSubspaceError& e) {
        err << "inadmissible input: " << e.what() << "\n";
        return kUnphysical;
    } catch (const NumericalDegeneracyError& e) {
        err << "inadmissible input: " << e.what() << "\n";
        return kUnphysical;
    } catch (const Error& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return kInconsistent;
    }
    err << "usage error: no subcommand\n";
    return kUsage;
}

}  // namespace gpm::cli
