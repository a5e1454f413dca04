#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "simkit/error.hpp"

namespace simkit {

class Value;
struct RecordField;

/// In-memory form of one serialized record: named field values in
/// insertion order. Equality is order-independent, matching the wire
/// format's order-independent decoding.
class Record {
public:
    std::vector<RecordField>& fields() { return fields_; }
    const std::vector<RecordField>& fields() const { return fields_; }

    /// Replaces the value of `name`, or appends the field if absent.
    void set(std::string_view name, Value value);

    const Value* find(std::string_view name) const;
    Value* find(std::string_view name);

    /// Same field names, equal values; order does not matter.
    bool operator==(const Record& other) const;
    bool operator!=(const Record& other) const { return !(*this == other); }

private:
    std::vector<RecordField> fields_;
};

/// Dynamically typed field value: one of the primitive kinds, a string,
/// a list, or a nested record.
class Value {
public:
    enum class Kind { Bool, Int32, Int64, Float64, String, List, Record };

    Value() : v_(false) {}

    static Value boolean(bool v) { return Value(Storage(v)); }
    static Value int32(std::int32_t v) { return Value(Storage(v)); }
    static Value int64(std::int64_t v) { return Value(Storage(v)); }
    static Value float64(double v) { return Value(Storage(v)); }
    static Value string(std::string v) { return Value(Storage(std::move(v))); }
    static Value list(std::vector<Value> v) { return Value(Storage(std::move(v))); }
    static Value record(Record v) { return Value(Storage(std::move(v))); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }

    bool asBool() const { return get<bool>("bool"); }
    std::int32_t asInt32() const { return get<std::int32_t>("int32"); }
    std::int64_t asInt64() const { return get<std::int64_t>("int64"); }
    double asFloat64() const { return get<double>("float64"); }
    const std::string& asString() const { return get<std::string>("string"); }
    const std::vector<Value>& asList() const { return get<std::vector<Value>>("list"); }
    std::vector<Value>& asList() { return const_cast<std::vector<Value>&>(get<std::vector<Value>>("list")); }
    const Record& asRecord() const { return get<Record>("record"); }
    Record& asRecord() { return const_cast<Record&>(get<Record>("record")); }

    bool operator==(const Value& other) const { return v_ == other.v_; }
    bool operator!=(const Value& other) const { return !(*this == other); }

private:
    using Storage =
        std::variant<bool, std::int32_t, std::int64_t, double, std::string, std::vector<Value>, Record>;

    explicit Value(Storage v) : v_(std::move(v)) {}

    template <typename T>
    const T& get(const char* wanted) const {
        const T* p = std::get_if<T>(&v_);
        if (!p) {
            throw Error(std::string("value is not of kind ") + wanted);
        }
        return *p;
    }

    Storage v_;
};

struct RecordField {
    std::string name;
    Value value;

    bool operator==(const RecordField&) const = default;
};

inline void Record::set(std::string_view name, Value value) {
    for (auto& f : fields_) {
        if (f.name == name) {
            f.value = std::move(value);
            return;
        }
    }
    fields_.push_back(RecordField{std::string(name), std::move(value)});
}

inline const Value* Record::find(std::string_view name) const {
    for (const auto& f : fields_) {
        if (f.name == name) return &f.value;
    }
    return nullptr;
}

inline Value* Record::find(std::string_view name) {
    for (auto& f : fields_) {
        if (f.name == name) return &f.value;
    }
    return nullptr;
}

inline bool Record::operator==(const Record& other) const {
    if (fields_.size() != other.fields_.size()) return false;
    for (const auto& f : fields_) {
        const Value* v = other.find(f.name);
        if (!v || !(*v == f.value)) return false;
    }
    return true;
}

} // namespace simkit
