#pragma once

#include "subsparse/classifier.hpp"
#include "subsparse/conditions.hpp"
#include "subsparse/random_model.hpp"
#include "subsparse/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace subsparse {

/// I/O failure while emitting an artifact (distinct exit code at the CLI).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// %.17g rendering: enough digits for a bit-exact double round trip.
/// Non-finite values render as inf / -inf / nan.
std::string format_float(double value);

/// Minimal JSON emitter with caller-controlled key order and format_float
/// numbers, so identical reports serialize to identical bytes.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);

    JsonWriter& field(std::string_view name, double v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, int v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, std::uint64_t v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, bool v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, std::string_view v) { return key(name).value(v); }

    const std::string& str() const { return out_; }

private:
    void item_prefix();
    std::string out_;
    std::vector<char> stack_;  // 'o' / 'a'
    std::vector<bool> first_;
    bool after_key_ = false;
};

std::string to_json(const ConditionReport& report);
std::string to_json(const RecoveryResult& result);
void write_fields(JsonWriter& w, const ConditionReport& report);
void write_fields(JsonWriter& w, const RecoveryResult& result);

std::string to_json(const MonteCarloReport& report);
std::string to_csv(const MonteCarloReport& report);

std::string to_json(const ClassificationConditionReport& report);

/// Writes `content` to `path`, or to stdout when path is "-".
void write_artifact(const std::string& path, const std::string& content);

}  // namespace subsparse
