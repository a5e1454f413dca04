#include "simkit/schema.hpp"

namespace simkit {

SchemaType SchemaType::record(std::shared_ptr<const RecordSchema> schema) {
    if (!schema) {
        throw SchemaError("nested record schema must not be null");
    }
    SchemaType t(Kind::Record);
    t.record_ = std::move(schema);
    return t;
}

SchemaType SchemaType::list(SchemaType element) {
    SchemaType t(Kind::List);
    t.element_ = std::make_shared<SchemaType>(std::move(element));
    return t;
}

const RecordSchema& SchemaType::recordSchema() const {
    if (kind_ != Kind::Record) {
        throw SchemaError("type is not a record type");
    }
    return *record_;
}

const SchemaType& SchemaType::element() const {
    if (kind_ != Kind::List) {
        throw SchemaError("type is not a list type");
    }
    return *element_;
}

Value SchemaType::defaultValue() const {
    switch (kind_) {
    case Kind::Bool: return Value::boolean(false);
    case Kind::Int32: return Value::int32(0);
    case Kind::Int64: return Value::int64(0);
    case Kind::Float64: return Value::float64(0.0);
    case Kind::String: return Value::string("");
    case Kind::Record: return Value::record(record_->instantiate());
    case Kind::List: return Value::list({});
    }
    throw SchemaError("corrupt schema type");
}

bool SchemaType::admits(const Value& v) const {
    switch (kind_) {
    case Kind::Bool: return v.kind() == Value::Kind::Bool;
    case Kind::Int32: return v.kind() == Value::Kind::Int32;
    case Kind::Int64: return v.kind() == Value::Kind::Int64;
    case Kind::Float64: return v.kind() == Value::Kind::Float64;
    case Kind::String: return v.kind() == Value::Kind::String;
    case Kind::List: {
        if (v.kind() != Value::Kind::List) return false;
        for (const Value& e : v.asList()) {
            if (!element_->admits(e)) return false;
        }
        return true;
    }
    case Kind::Record: {
        if (v.kind() != Value::Kind::Record) return false;
        const Record& r = v.asRecord();
        if (r.fields().size() != record_->fields().size()) return false;
        for (const auto& f : record_->fields()) {
            const Value* fv = r.find(f.name);
            if (!fv || !f.type.admits(*fv)) return false;
        }
        return true;
    }
    }
    return false;
}

RecordSchema& RecordSchema::add(std::string fieldName, SchemaType type) {
    Value def = type.defaultValue();
    return add(std::move(fieldName), std::move(type), std::move(def));
}

RecordSchema& RecordSchema::add(std::string fieldName, SchemaType type, Value defaultValue) {
    if (fieldName.empty()) {
        throw SchemaError("field name must not be empty");
    }
    for (char ch : fieldName) {
        if (static_cast<unsigned char>(ch) > 0x7F) {
            throw SchemaError("field name must be ASCII: '" + fieldName + "'");
        }
    }
    const FieldKey key = fieldKey(fieldName);
    for (const auto& f : fields_) {
        if (f.name == fieldName) {
            throw SchemaError("duplicate field name '" + fieldName + "' in record '" + name_ + "'");
        }
        if (f.key == key) {
            throw SchemaError("field key collision between '" + f.name + "' and '" + fieldName +
                              "' in record '" + name_ + "'");
        }
    }
    if (!type.admits(defaultValue)) {
        throw SchemaError("default for field '" + fieldName + "' does not match its declared type");
    }
    fields_.push_back(Field{std::move(fieldName), key, std::move(type), std::move(defaultValue)});
    return *this;
}

const RecordSchema::Field* RecordSchema::find(std::string_view fieldName) const {
    for (const auto& f : fields_) {
        if (f.name == fieldName) return &f;
    }
    return nullptr;
}

Record RecordSchema::instantiate() const {
    Record r;
    for (const auto& f : fields_) {
        r.set(f.name, f.defaultValue);
    }
    return r;
}

} // namespace simkit
