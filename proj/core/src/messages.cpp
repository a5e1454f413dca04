#include "simkit/messages.hpp"

#include <memory>

#include "simkit/error.hpp"

namespace simkit::msg {

namespace {

std::shared_ptr<const RecordSchema> readingSchema() {
    static const auto schema = [] {
        auto s = std::make_shared<RecordSchema>("ScanReading");
        s->add("angle", SchemaType::float64());
        s->add("distance", SchemaType::float64());
        s->add("valid", SchemaType::boolean());
        return std::shared_ptr<const RecordSchema>(s);
    }();
    return schema;
}

} // namespace

const RecordSchema& discoverSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("Discover");
        s.add("name", SchemaType::string());
        s.add("instance", SchemaType::int32());
        s.add("version", SchemaType::string());
        return s;
    }();
    return schema;
}

const RecordSchema& configResponseSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("ConfigResponse");
        s.add("name", SchemaType::string());
        s.add("instance", SchemaType::int32());
        // The configuration subset in its canonical text form; the
        // parse/print round-trip stability is what makes this safe.
        s.add("entries", SchemaType::string());
        return s;
    }();
    return schema;
}

const RecordSchema& pulseSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("Pulse");
        s.add("name", SchemaType::string());
        s.add("instance", SchemaType::int32());
        s.add("state", SchemaType::string());
        s.add("stamp", SchemaType::int64());
        return s;
    }();
    return schema;
}

const RecordSchema& scanResultSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("ScanResult");
        s.add("scanner", SchemaType::int32());
        s.add("vehicle", SchemaType::int32());
        s.add("stamp", SchemaType::int64());
        s.add("readings", SchemaType::list(SchemaType::record(readingSchema())));
        return s;
    }();
    return schema;
}

const RecordSchema& vehicleStateSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("VehicleState");
        s.add("vehicle", SchemaType::int32());
        s.add("x", SchemaType::float64());
        s.add("y", SchemaType::float64());
        s.add("heading", SchemaType::float64());
        s.add("speed", SchemaType::float64());
        s.add("steering", SchemaType::float64());
        s.add("stamp", SchemaType::int64());
        return s;
    }();
    return schema;
}

const RecordSchema& vehicleCommandSchema() {
    static const RecordSchema schema = [] {
        RecordSchema s("VehicleCommand");
        s.add("vehicle", SchemaType::int32());
        s.add("accel", SchemaType::float64());
        s.add("steering", SchemaType::float64());
        s.add("stamp", SchemaType::int64());
        return s;
    }();
    return schema;
}

Container makeDiscover(const ModuleDescriptor& descriptor, std::int64_t sentUs) {
    Record r = discoverSchema().instantiate();
    r.set("name", Value::string(descriptor.name));
    r.set("instance", Value::int32(static_cast<std::int32_t>(descriptor.instanceId)));
    r.set("version", Value::string(descriptor.version));
    Container c;
    c.dataTypeId = kDiscover;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(discoverSchema(), r);
    return c;
}

ModuleDescriptor parseDiscover(const Container& c) {
    Record r = decodeRecord(discoverSchema(), c);
    ModuleDescriptor d;
    d.name = r.find("name")->asString();
    d.instanceId = static_cast<std::uint32_t>(r.find("instance")->asInt32());
    d.version = r.find("version")->asString();
    return d;
}

Container makeConfigResponse(const ModuleDescriptor& requester,
                             const ConfigurationSet& config, std::int64_t sentUs) {
    Record r = configResponseSchema().instantiate();
    r.set("name", Value::string(requester.name));
    r.set("instance", Value::int32(static_cast<std::int32_t>(requester.instanceId)));
    r.set("entries", Value::string(config.print()));
    Container c;
    c.dataTypeId = kConfigResponse;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(configResponseSchema(), r);
    return c;
}

std::pair<ModuleDescriptor, ConfigurationSet> parseConfigResponse(const Container& c) {
    Record r = decodeRecord(configResponseSchema(), c);
    ModuleDescriptor d;
    d.name = r.find("name")->asString();
    d.instanceId = static_cast<std::uint32_t>(r.find("instance")->asInt32());
    return {d, ConfigurationSet::parse(r.find("entries")->asString())};
}

Container makePulse(const Pulse& pulse, std::int64_t sentUs) {
    Record r = pulseSchema().instantiate();
    r.set("name", Value::string(pulse.descriptor.name));
    r.set("instance", Value::int32(static_cast<std::int32_t>(pulse.descriptor.instanceId)));
    r.set("state", Value::string(std::string(toString(pulse.state))));
    r.set("stamp", Value::int64(pulse.stampUs));
    Container c;
    c.dataTypeId = kPulse;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(pulseSchema(), r);
    return c;
}

Pulse parsePulse(const Container& c) {
    Record r = decodeRecord(pulseSchema(), c);
    Pulse p;
    p.descriptor.name = r.find("name")->asString();
    p.descriptor.instanceId = static_cast<std::uint32_t>(r.find("instance")->asInt32());
    auto state = lifecycleFromString(r.find("state")->asString());
    if (!state) {
        throw Error("pulse carries unknown lifecycle state '" +
                    r.find("state")->asString() + "'");
    }
    p.state = *state;
    p.stampUs = r.find("stamp")->asInt64();
    return p;
}

Container makeVehicleState(std::int32_t vehicleId, const VehicleState& state,
                           std::int64_t sentUs) {
    Record r = vehicleStateSchema().instantiate();
    r.set("vehicle", Value::int32(vehicleId));
    r.set("x", Value::float64(state.position.x));
    r.set("y", Value::float64(state.position.y));
    r.set("heading", Value::float64(state.heading));
    r.set("speed", Value::float64(state.speed));
    r.set("steering", Value::float64(state.steeringAngle));
    r.set("stamp", Value::int64(state.timestampUs));
    Container c;
    c.dataTypeId = kVehicleState;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(vehicleStateSchema(), r);
    return c;
}

std::pair<std::int32_t, VehicleState> parseVehicleState(const Container& c) {
    Record r = decodeRecord(vehicleStateSchema(), c);
    VehicleState s;
    s.position.x = r.find("x")->asFloat64();
    s.position.y = r.find("y")->asFloat64();
    s.heading = r.find("heading")->asFloat64();
    s.speed = r.find("speed")->asFloat64();
    s.steeringAngle = r.find("steering")->asFloat64();
    s.timestampUs = r.find("stamp")->asInt64();
    return {r.find("vehicle")->asInt32(), s};
}

Container makeVehicleCommand(std::int32_t vehicleId, const VehicleCommand& command,
                             std::int64_t stampUs, std::int64_t sentUs) {
    Record r = vehicleCommandSchema().instantiate();
    r.set("vehicle", Value::int32(vehicleId));
    r.set("accel", Value::float64(command.acceleration));
    r.set("steering", Value::float64(command.steeringAngle));
    r.set("stamp", Value::int64(stampUs));
    Container c;
    c.dataTypeId = kVehicleCommand;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(vehicleCommandSchema(), r);
    return c;
}

std::pair<std::int32_t, VehicleCommand> parseVehicleCommand(const Container& c) {
    Record r = decodeRecord(vehicleCommandSchema(), c);
    VehicleCommand cmd;
    cmd.acceleration = r.find("accel")->asFloat64();
    cmd.steeringAngle = r.find("steering")->asFloat64();
    return {r.find("vehicle")->asInt32(), cmd};
}

Container makeScanResult(const ScanResult& result, std::int64_t sentUs) {
    Record r = scanResultSchema().instantiate();
    r.set("scanner", Value::int32(result.scannerId));
    r.set("vehicle", Value::int32(result.vehicleId));
    r.set("stamp", Value::int64(result.timestampUs));
    std::vector<Value> readings;
    readings.reserve(result.readings.size());
    for (const auto& reading : result.readings) {
        Record e = readingSchema()->instantiate();
        e.set("angle", Value::float64(reading.angle));
        e.set("distance", Value::float64(reading.distance));
        e.set("valid", Value::boolean(reading.valid));
        readings.push_back(Value::record(std::move(e)));
    }
    r.set("readings", Value::list(std::move(readings)));
    Container c;
    c.dataTypeId = kScanResult;
    c.sentTimestampUs = sentUs;
    c.payload = encodeRecord(scanResultSchema(), r);
    return c;
}

ScanResult parseScanResult(const Container& c) {
    Record r = decodeRecord(scanResultSchema(), c);
    ScanResult result;
    result.scannerId = r.find("scanner")->asInt32();
    result.vehicleId = r.find("vehicle")->asInt32();
    result.timestampUs = r.find("stamp")->asInt64();
    for (const auto& v : r.find("readings")->asList()) {
        const Record& e = v.asRecord();
        ScanReading reading;
        reading.angle = e.find("angle")->asFloat64();
        reading.distance = e.find("distance")->asFloat64();
        reading.valid = e.find("valid")->asBool();
        result.readings.push_back(reading);
    }
    return result;
}

} // namespace simkit::msg
