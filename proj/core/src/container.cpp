#include "simkit/container.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace simkit {

namespace {

void encodeValue(const SchemaType& type, const Value& value, const std::string& path, Bytes& out) {
    if (!type.admits(value)) {
        throw EncodeError("field '" + path + "' does not match its declared type");
    }
    switch (type.kind()) {
    case SchemaType::Kind::Bool:
        putU8(out, value.asBool() ? 1 : 0);
        return;
    case SchemaType::Kind::Int32:
        putI32(out, value.asInt32());
        return;
    case SchemaType::Kind::Int64:
        putI64(out, value.asInt64());
        return;
    case SchemaType::Kind::Float64:
        putF64(out, value.asFloat64());
        return;
    case SchemaType::Kind::String: {
        const std::string& s = value.asString();
        if (!isValidUtf8(s)) {
            throw EncodeError("field '" + path + "' holds non-UTF-8 string data");
        }
        out.insert(out.end(), s.begin(), s.end());
        return;
    }
    case SchemaType::Kind::Record: {
        auto fields = encodeRecord(type.recordSchema(), value.asRecord());
        for (const auto& f : fields) {
            putU32(out, f.key);
            putU32(out, static_cast<std::uint32_t>(f.value.size()));
            out.insert(out.end(), f.value.begin(), f.value.end());
        }
        return;
    }
    case SchemaType::Kind::List: {
        const auto& items = value.asList();
        putU32(out, static_cast<std::uint32_t>(items.size()));
        for (std::size_t i = 0; i < items.size(); ++i) {
            Bytes elem;
            encodeValue(type.element(), items[i], path + "[" + std::to_string(i) + "]", elem);
            putU32(out, static_cast<std::uint32_t>(elem.size()));
            out.insert(out.end(), elem.begin(), elem.end());
        }
        return;
    }
    }
    throw EncodeError("field '" + path + "' has a corrupt schema type");
}

/// Splits a record-style payload (key | length | bytes, repeated) into
/// fields, bounds-checking against `bytes` and rejecting duplicate keys.
std::vector<SerializedField> parseFieldList(ByteView bytes, std::size_t baseOffset) {
    std::vector<SerializedField> fields;
    std::unordered_set<FieldKey> seen;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < 8) {
            throw FrameError("truncated field header", baseOffset + pos);
        }
        SerializedField f;
        f.key = getU32(bytes, pos);
        const std::uint32_t length = getU32(bytes, pos + 4);
        pos += 8;
        if (bytes.size() - pos < length) {
            throw FrameError("field length overruns payload", baseOffset + pos - 4);
        }
        if (!seen.insert(f.key).second) {
            throw FrameError("duplicate field key in payload", baseOffset + pos - 8);
        }
        f.frameOffset = baseOffset + pos;
        f.value.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos + length));
        pos += length;
        fields.push_back(std::move(f));
    }
    return fields;
}

Value decodeValue(const SchemaType& type, ByteView bytes, std::size_t baseOffset) {
    switch (type.kind()) {
    case SchemaType::Kind::Bool: {
        if (bytes.size() != 1 || bytes[0] > 1) {
            throw FrameError("malformed bool value", baseOffset);
        }
        return Value::boolean(bytes[0] == 1);
    }
    case SchemaType::Kind::Int32:
        if (bytes.size() != 4) throw FrameError("malformed int32 value", baseOffset);
        return Value::int32(getI32(bytes, 0));
    case SchemaType::Kind::Int64:
        if (bytes.size() != 8) throw FrameError("malformed int64 value", baseOffset);
        return Value::int64(getI64(bytes, 0));
    case SchemaType::Kind::Float64:
        if (bytes.size() != 8) throw FrameError("malformed float64 value", baseOffset);
        return Value::float64(getF64(bytes, 0));
    case SchemaType::Kind::String:
        return Value::string(std::string(bytes.begin(), bytes.end()));
    case SchemaType::Kind::Record: {
        auto fields = parseFieldList(bytes, baseOffset);
        Container nested;
        nested.payload = std::move(fields);
        return Value::record(decodeRecord(type.recordSchema(), nested));
    }
    case SchemaType::Kind::List: {
        if (bytes.size() < 4) throw FrameError("truncated list header", baseOffset);
        const std::uint32_t count = getU32(bytes, 0);
        std::vector<Value> items;
        std::size_t pos = 4;
        for (std::uint32_t i = 0; i < count; ++i) {
            if (bytes.size() - pos < 4) {
                throw FrameError("truncated list element header", baseOffset + pos);
            }
            const std::uint32_t length = getU32(bytes, pos);
            pos += 4;
            if (bytes.size() - pos < length) {
                throw FrameError("list element overruns value", baseOffset + pos - 4);
            }
            items.push_back(decodeValue(type.element(), bytes.subspan(pos, length), baseOffset + pos));
            pos += length;
        }
        if (pos != bytes.size()) {
            throw FrameError("trailing bytes after list elements", baseOffset + pos);
        }
        return Value::list(std::move(items));
    }
    }
    throw FrameError("corrupt schema type", baseOffset);
}

} // namespace

Bytes encodeFrame(const Container& container) {
    Bytes payload;
    for (const auto& f : container.payload) {
        putU32(payload, f.key);
        putU32(payload, static_cast<std::uint32_t>(f.value.size()));
        payload.insert(payload.end(), f.value.begin(), f.value.end());
    }
    Bytes frame;
    frame.reserve(kFrameHeaderSize + payload.size());
    putU32(frame, kFrameMagic);
    putU32(frame, container.dataTypeId);
    putI64(frame, container.sentTimestampUs);
    putU32(frame, static_cast<std::uint32_t>(payload.size()));
    frame.insert(frame.end(), payload.begin(), payload.end());
    return frame;
}

Container decodeFrame(ByteView frame) {
    if (frame.size() < kFrameHeaderSize) {
        throw FrameError("truncated frame header", frame.size());
    }
    if (getU32(frame, 0) != kFrameMagic) {
        throw FrameError("bad frame magic", 0);
    }
    Container c;
    c.dataTypeId = getU32(frame, 4);
    c.sentTimestampUs = getI64(frame, 8);
    const std::uint32_t payloadLength = getU32(frame, 16);
    if (frame.size() - kFrameHeaderSize != payloadLength) {
        throw FrameError("payload length does not match frame size", 16);
    }
    c.payload = parseFieldList(frame.subspan(kFrameHeaderSize), kFrameHeaderSize);
    return c;
}

std::vector<SerializedField> encodeRecord(const RecordSchema& schema, const Record& record) {
    for (const auto& rf : record.fields()) {
        if (!schema.find(rf.name)) {
            throw EncodeError("field '" + rf.name + "' is not declared in record '" + schema.name() + "'");
        }
    }
    std::vector<SerializedField> out;
    out.reserve(schema.fields().size());
    for (const auto& sf : schema.fields()) {
        const Value* v = record.find(sf.name);
        if (!v) {
            throw EncodeError("field '" + sf.name + "' is missing from record '" + schema.name() + "'");
        }
        SerializedField f;
        f.key = sf.key;
        encodeValue(sf.type, *v, sf.name, f.value);
        out.push_back(std::move(f));
    }
    return out;
}

Record decodeRecord(const RecordSchema& schema, const Container& container) {
    std::unordered_map<FieldKey, const SerializedField*> index;
    index.reserve(container.payload.size());
    for (const auto& f : container.payload) {
        index.emplace(f.key, &f);
    }
    Record r;
    for (const auto& sf : schema.fields()) {
        auto it = index.find(sf.key);
        if (it == index.end()) {
            r.set(sf.name, sf.defaultValue);
        } else {
            r.set(sf.name, decodeValue(sf.type, it->second->value, it->second->frameOffset));
        }
    }
    return r;
}

Bytes encode(const RecordSchema& schema, const Record& record, std::uint32_t dataTypeId,
             std::int64_t sentTimestampUs) {
    Container c;
    c.dataTypeId = dataTypeId;
    c.sentTimestampUs = sentTimestampUs;
    c.payload = encodeRecord(schema, record);
    return encodeFrame(c);
}

Record decode(ByteView frame, const RecordSchema& schema) {
    return decodeRecord(schema, decodeFrame(frame));
}

bool isValidUtf8(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        int len = 0;
        std::uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1Fu;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0Fu;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07u;
        } else {
            return false;
        }
        if (i + static_cast<std::size_t>(len) > n) return false;
        for (int k = 1; k < len; ++k) {
            const unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3Fu);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += static_cast<std::size_t>(len);
    }
    return true;
}

} // namespace simkit
