#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "simkit/crc32.hpp"
#include "simkit/value.hpp"

namespace simkit {

class RecordSchema;

/// Type descriptor for one schema field: a primitive, a string, a nested
/// record, or a list of any of these.
class SchemaType {
public:
    enum class Kind { Bool, Int32, Int64, Float64, String, Record, List };

    static SchemaType boolean() { return SchemaType(Kind::Bool); }
    static SchemaType int32() { return SchemaType(Kind::Int32); }
    static SchemaType int64() { return SchemaType(Kind::Int64); }
    static SchemaType float64() { return SchemaType(Kind::Float64); }
    static SchemaType string() { return SchemaType(Kind::String); }
    static SchemaType record(std::shared_ptr<const RecordSchema> schema);
    static SchemaType list(SchemaType element);

    Kind kind() const { return kind_; }
    const RecordSchema& recordSchema() const;
    const SchemaType& element() const;

    /// Zero/empty value of this type; nested records get all their
    /// fields' defaults.
    Value defaultValue() const;

    /// True iff `v` is a structurally valid value of this type.
    bool admits(const Value& v) const;

private:
    explicit SchemaType(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::shared_ptr<const RecordSchema> record_;
    std::shared_ptr<const SchemaType> element_;
};

/// A named record type: the unit of schema declaration. Field keys are
/// derived from field names at definition time; duplicate names and key
/// collisions between different names are both rejected here.
class RecordSchema {
public:
    struct Field {
        std::string name;
        FieldKey key;
        SchemaType type;
        Value defaultValue;
    };

    explicit RecordSchema(std::string name) : name_(std::move(name)) {}

    RecordSchema& add(std::string fieldName, SchemaType type);
    RecordSchema& add(std::string fieldName, SchemaType type, Value defaultValue);

    const std::string& name() const { return name_; }
    const std::vector<Field>& fields() const { return fields_; }
    const Field* find(std::string_view fieldName) const;

    /// A record carrying every field's default.
    Record instantiate() const;

private:
    std::string name_;
    std::vector<Field> fields_;
};

} // namespace simkit
