#pragma once

#include <cstdint>
#include <utility>

#include "simkit/config.hpp"
#include "simkit/container.hpp"
#include "simkit/dmcp.hpp"
#include "simkit/sensor.hpp"
#include "simkit/vehicle.hpp"

namespace simkit::msg {

// dataTypeId registry. 1..99 belong to the framework; user message
// kinds start at kFirstUserDataType.
inline constexpr std::uint32_t kDiscover = 1;        // DMCP discovery request
inline constexpr std::uint32_t kConfigResponse = 2;  // DMCP configuration reply
inline constexpr std::uint32_t kPulse = 3;           // DMCP lifecycle heartbeat
inline constexpr std::uint32_t kScanResult = 100;    // scanner sweep
inline constexpr std::uint32_t kVehicleState = 101;  // vehicle pose/speed sample
inline constexpr std::uint32_t kVehicleCommand = 102;  // acceleration/steering setpoint

const RecordSchema& discoverSchema();
const RecordSchema& configResponseSchema();
const RecordSchema& pulseSchema();
const RecordSchema& scanResultSchema();
const RecordSchema& vehicleStateSchema();
const RecordSchema& vehicleCommandSchema();

Container makeDiscover(const ModuleDescriptor& descriptor, std::int64_t sentUs);
ModuleDescriptor parseDiscover(const Container& c);

Container makeConfigResponse(const ModuleDescriptor& requester,
                             const ConfigurationSet& config, std::int64_t sentUs);
std::pair<ModuleDescriptor, ConfigurationSet> parseConfigResponse(const Container& c);

struct Pulse {
    ModuleDescriptor descriptor;
    LifecycleState state = LifecycleState::Running;
    std::int64_t stampUs = 0;
};

Container makePulse(const Pulse& pulse, std::int64_t sentUs);
Pulse parsePulse(const Container& c);

Container makeVehicleState(std::int32_t vehicleId, const VehicleState& state,
                           std::int64_t sentUs);
std::pair<std::int32_t, VehicleState> parseVehicleState(const Container& c);

Container makeVehicleCommand(std::int32_t vehicleId, const VehicleCommand& command,
                             std::int64_t stampUs, std::int64_t sentUs);
std::pair<std::int32_t, VehicleCommand> parseVehicleCommand(const Container& c);

Container makeScanResult(const ScanResult& result, std::int64_t sentUs);
ScanResult parseScanResult(const Container& c);

} // namespace simkit::msg
