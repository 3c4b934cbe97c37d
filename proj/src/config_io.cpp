#include "kalmi/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kalmi/information.hpp"
#include "kalmi/rng.hpp"
#include "kalmi/version.hpp"

namespace kalmi {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on " + path);
}

// nlohmann reports byte offsets; convert to a line anchor.
std::string line_anchor(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return std::to_string(line);
}

json parse_json(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ":" + line_anchor(text, e.byte) + ": " + e.what());
    }
}

Matrix parse_matrix(const json& node, const std::string& field,
                    Eigen::Index rows, Eigen::Index cols, const std::string& path) {
    if (!node.is_array() || node.size() != static_cast<std::size_t>(rows))
        throw ConfigError(path + ": " + field + " must have " + std::to_string(rows) +
                          " rows");
    Matrix out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = node[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols))
            throw ConfigError(path + ": " + field + " row " + std::to_string(r) +
                              " must have " + std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_number())
                throw ConfigError(path + ": " + field + " entries must be numbers");
            out(r, c) = cell.get<double>();
        }
    }
    return out;
}

Vector parse_vector(const json& node, const std::string& field, Eigen::Index len,
                    const std::string& path) {
    if (!node.is_array() || node.size() != static_cast<std::size_t>(len))
        throw ConfigError(path + ": " + field + " must have " + std::to_string(len) +
                          " entries");
    Vector out(len);
    for (Eigen::Index i = 0; i < len; ++i) {
        const json& cell = node[static_cast<std::size_t>(i)];
        if (!cell.is_number())
            throw ConfigError(path + ": " + field + " entries must be numbers");
        out[i] = cell.get<double>();
    }
    return out;
}

const json& require(const json& doc, const std::string& key, const std::string& path) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(path + ": missing field \"" + key + "\"");
    return *it;
}

Eigen::Index require_dim(const json& doc, const std::string& key, const std::string& path) {
    const json& node = require(doc, key, path);
    if (!node.is_number_integer() || node.get<long long>() < 1)
        throw ConfigError(path + ": " + key + " must be a positive integer");
    return static_cast<Eigen::Index>(node.get<long long>());
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Vector vector_from_json(const json& node, const std::string& what) {
    if (!node.is_array()) throw ConfigError(what + " must be an array");
    Vector out(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number()) throw ConfigError(what + " entries must be numbers");
        out[static_cast<Eigen::Index>(i)] = node[i].get<double>();
    }
    return out;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    const std::string text = read_file(path);
    const json doc = parse_json(text, path);

    const Eigen::Index n = require_dim(doc, "n", path);
    const Eigen::Index m = require_dim(doc, "m", path);
    const Eigen::Index l = require_dim(doc, "l", path);

    Matrix phi = parse_matrix(require(doc, "Phi", path), "Phi", n, n, path);
    Matrix gamma = parse_matrix(require(doc, "Gamma", path), "Gamma", n, l, path);
    Matrix h = parse_matrix(require(doc, "H", path), "H", m, n, path);
    Matrix q_raw = parse_matrix(require(doc, "Q", path), "Q", l, l, path);
    Matrix r_raw = parse_matrix(require(doc, "R", path), "R", m, m, path);

    SymMatrix q = [&] {
        try {
            return SymMatrix(q_raw);
        } catch (const std::exception& e) {
            throw ConfigError(path + ": Q: " + e.what());
        }
    }();
    SymMatrix r = [&] {
        try {
            return SymMatrix(r_raw);
        } catch (const std::exception& e) {
            throw ConfigError(path + ": R: " + e.what());
        }
    }();

    StateSpaceModel model{std::move(phi), std::move(gamma), std::move(h),
                          std::move(q), std::move(r)};
    ValidationResult validity = validate(model);
    if (!validity.ok()) throw ConfigError(path + ": " + validity.describe());

    const json& belief_node = require(doc, "initial_belief", path);
    Vector belief_mean =
        parse_vector(require(belief_node, "mean", path), "initial_belief.mean", n, path);
    Matrix belief_cov = parse_matrix(require(belief_node, "cov", path),
                                     "initial_belief.cov", n, n, path);
    const json& truth_node = require(doc, "initial_truth", path);
    Vector truth_mean =
        parse_vector(require(truth_node, "mean", path), "initial_truth.mean", n, path);
    Matrix truth_cov = parse_matrix(require(truth_node, "cov", path),
                                    "initial_truth.cov", n, n, path);

    const json& steps_node = require(doc, "steps", path);
    if (!steps_node.is_number_integer() || steps_node.get<long long>() < 1)
        throw ConfigError(path + ": steps must be a positive integer");
    const json& seed_node = require(doc, "seed", path);
    if (!seed_node.is_number_integer())
        throw ConfigError(path + ": seed must be an integer");

    try {
        GaussianBelief belief(std::move(belief_mean), SymMatrix(belief_cov));
        Scenario scenario{std::move(model),
                          std::move(truth_mean),
                          SymMatrix(truth_cov),
                          std::move(belief),
                          static_cast<int>(steps_node.get<long long>()),
                          seed_node.get<std::uint64_t>()};
        if (!psd_factor(scenario.initial_truth_cov))
            throw ConfigError(path + ": initial_truth.cov not positive semidefinite");
        return scenario;
    } catch (const NotPositiveDefinite& e) {
        throw ConfigError(path + ": initial_belief.cov " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void write_trajectory(const std::string& path, const Trajectory& trajectory,
                      const Scenario& scenario) {
    json doc;
    doc["metadata"] = {
        {"seed", scenario.seed},
        {"generator", kGeneratorId},
        {"substreams",
         {{"initial_truth", kStreamInitialTruth},
          {"process_noise", kStreamProcessNoise},
          {"measurement_noise", kStreamMeasurementNoise}}},
        {"build", std::string("kalmi ") + kVersion},
    };
    json truths = json::array();
    for (const auto& x : trajectory.truths) truths.push_back(vector_to_json(x));
    json measurements = json::array();
    for (const auto& z : trajectory.measurements)
        measurements.push_back(vector_to_json(z));
    doc["truths"] = std::move(truths);
    doc["measurements"] = std::move(measurements);
    write_file(path, doc.dump(2) + "\n");
}

Trajectory load_trajectory(const std::string& path) {
    const std::string text = read_file(path);
    const json doc = parse_json(text, path);

    const json& truths = require(doc, "truths", path);
    const json& measurements = require(doc, "measurements", path);
    if (!truths.is_array() || !measurements.is_array())
        throw ConfigError(path + ": truths/measurements must be arrays");
    if (truths.size() != measurements.size() + 1)
        throw ConfigError(path + ": expected one more truth row than measurement rows");

    Trajectory out;
    out.truths.reserve(truths.size());
    out.measurements.reserve(measurements.size());
    for (const auto& row : truths)
        out.truths.push_back(vector_from_json(row, path + ": truth row"));
    for (const auto& row : measurements)
        out.measurements.push_back(vector_from_json(row, path + ": measurement row"));
    return out;
}

void write_trace(const std::string& path, const FilterRun& run,
                 const Scenario& scenario) {
    const Eigen::Index n = scenario.model.n();
    const Eigen::Index m = scenario.model.m();
    std::ostringstream out;
    out.precision(17);

    out << "# cumulative_mi_nats = " << run.cumulative_mi_nats << "\n";
    out << "# cumulative_mi_bits = " << nats_to_bits(run.cumulative_mi_nats) << "\n";
    out << "# mean_nees = " << run.mean_nees << "\n";

    out << "k";
    for (Eigen::Index i = 1; i <= m; ++i) out << ",z_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) out << ",xhat_" << i;
    for (Eigen::Index i = 1; i <= n; ++i)
        for (Eigen::Index j = 1; j <= n; ++j) out << ",sigma_" << i << j;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",innovation_" << i;
    out << ",mi_nats,cum_mi_nats,nees\n";

    double cum_mi = 0.0;
    for (std::size_t idx = 0; idx < run.records.size(); ++idx) {
        const UpdateRecord& rec = run.records[idx];
        cum_mi += rec.mi_nats;
        out << rec.step;
        for (Eigen::Index i = 0; i < m; ++i) out << "," << rec.measurement[i];
        for (Eigen::Index i = 0; i < n; ++i) out << "," << rec.posterior.mean()[i];
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) out << "," << rec.posterior.cov()(i, j);
        for (Eigen::Index i = 0; i < m; ++i) out << "," << rec.innovation[i];
        out << "," << rec.mi_nats << "," << cum_mi << "," << run.nees[idx] << "\n";
    }
    write_file(path, out.str());
}

std::string report_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const auto& check : report.checks) {
        checks.push_back({{"check_name", check.check_name},
                          {"instances_run", check.instances_run},
                          {"max_error", check.max_error},
                          {"tolerance", check.tolerance},
                          {"passed", check.passed}});
    }
    json doc = {{"checks", std::move(checks)},
                {"overall_passed", report.overall_passed},
                {"metadata",
                 {{"seed", report.seed},
                  {"build", report.build},
                  {"timestamp", report.timestamp}}}};
    return doc.dump(2) + "\n";
}

void write_report(const std::string& path, const VerificationReport& report) {
    write_file(path, report_to_json(report));
}

}  // namespace kalmi
