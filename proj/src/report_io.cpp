#include "subsparse/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace subsparse {

namespace {
constexpr double kRadToDeg = 57.29577951308232;  // 180 / pi
}

std::string format_float(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void JsonWriter::item_prefix() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    if (!first_.back()) out_ += ',';
    first_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
    item_prefix();
    out_ += '{';
    stack_.push_back('o');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    stack_.pop_back();
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    item_prefix();
    out_ += '[';
    stack_.push_back('a');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    stack_.pop_back();
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
    item_prefix();
    out_ += '"';
    out_ += name;
    out_ += "\":";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    item_prefix();
    if (std::isfinite(v)) {
        out_ += format_float(v);
    } else {
        out_ += '"';
        out_ += format_float(v);
        out_ += '"';
    }
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    item_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    item_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    item_prefix();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    item_prefix();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    return *this;
}

void write_fields(JsonWriter& w, const ConditionReport& report) {
    w.field("gamma0", report.gamma0);
    w.field("gamma0_deg", report.gamma0 * kRadToDeg);
    w.field("dist_ac_s0", report.dist_ac_s0);
    w.field("dist_ac_s0_deg", report.dist_ac_s0 * kRadToDeg);
    w.field("dist_ac_d0", report.dist_ac_d0);
    w.field("dist_ac_d0_deg", report.dist_ac_d0 * kRadToDeg);
    w.field("max_dual_response", report.max_dual_response);
    w.field("mutual_coherence", report.mutual_coherence);
    w.field("num_dual_points", report.num_dual_points);
    w.field("prc_holds", report.prc_holds);
    w.field("drc_holds", report.drc_holds);
    w.field("dual_response_holds", report.dual_response_holds);
    w.field("prc_margin", report.prc_margin);
    w.field("drc_margin", report.drc_margin);
    w.field("prc_verdict", to_string(report.prc_verdict));
    w.field("drc_verdict", to_string(report.drc_verdict));
}

std::string to_json(const ConditionReport& report) {
    JsonWriter w;
    w.begin_object();
    write_fields(w, report);
    w.end_object();
    return w.str();
}

void write_fields(JsonWriter& w, const RecoveryResult& result) {
    w.field("status", to_string(result.status));
    w.field("objective", result.objective);
    w.field("residual_norm", result.residual_norm);
    w.field("iterations", result.iterations);
    w.key("support").begin_array();
    for (int j : result.support) w.value(j);
    w.end_array();
    w.key("coefficients").begin_array();
    for (int j = 0; j < result.coefficients.size(); ++j) w.value(result.coefficients[j]);
    w.end_array();
}

std::string to_json(const RecoveryResult& result) {
    JsonWriter w;
    w.begin_object();
    write_fields(w, result);
    w.end_object();
    return w.str();
}

std::string to_json(const MonteCarloReport& report) {
    JsonWriter w;
    w.begin_object();
    w.field("D", report.params.ambient_dim);
    w.field("d0", report.params.subspace_dim);
    w.field("s0", report.params.num_inliers);
    w.field("lambda", report.params.outlier_ratio);
    w.field("rho0", report.params.density());
    w.field("k0", report.params.k0());
    w.field("trials", report.trials);
    w.field("successes", report.successes);
    w.field("resource_failures", report.resource_failures);
    w.field("empirical_frequency", report.empirical_frequency);
    w.field("theoretical_lower_bound", report.theoretical_lower_bound);
    w.field("master_seed", report.master_seed);
    w.key("per_trial").begin_array();
    for (const TrialRecord& record : report.records) {
        w.begin_object();
        w.field("trial", record.trial);
        w.field("seed", record.seed);
        w.field("gamma0", record.gamma0);
        w.field("dist_ac_d0", record.dist_ac_d0);
        w.field("drc", record.drc);
        w.field("resource_error", record.resource_error);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string to_csv(const MonteCarloReport& report) {
    std::string out = "trial,seed,gamma0,dist_ac_d0,drc,resource_error\n";
    for (const TrialRecord& record : report.records) {
        out += std::to_string(record.trial);
        out += ',';
        out += std::to_string(record.seed);
        out += ',';
        out += format_float(record.gamma0);
        out += ',';
        out += format_float(record.dist_ac_d0);
        out += ',';
        out += record.drc ? '1' : '0';
        out += ',';
        out += record.resource_error ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string to_json(const ClassificationConditionReport& report) {
    JsonWriter w;
    w.begin_object();
    w.field("all_hold", report.all_hold);
    w.key("groups").begin_array();
    for (const GroupConditionReport& group : report.groups) {
        w.begin_object();
        w.field("covering_radius", group.covering_radius);
        w.field("cross_distance", group.cross_distance);
        w.field("margin", group.margin);
        w.field("verdict", to_string(group.verdict));
        w.field("holds", group.holds);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

void write_artifact(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace subsparse
