#include "simkit/sim/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <utility>
#include <variant>

#include "simkit/dmcp.hpp"
#include "simkit/error.hpp"
#include "simkit/messages.hpp"
#include "simkit/obstacles.hpp"
#include "simkit/recording.hpp"
#include "simkit/sensor.hpp"
#include "simkit/vehicle.hpp"

namespace simkit::sim {
namespace {

std::vector<scn::WaypointId> parseWaypointList(const std::string& text) {
    std::vector<scn::WaypointId> ids;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::string item = text.substr(pos, end - pos);
        std::size_t first = item.find_first_not_of(" \t");
        std::size_t last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? std::string()
                                          : item.substr(first, last - first + 1);
        auto id = scn::WaypointId::parse(item);
        if (!id) {
            throw SetupError("bad waypoint id '" + item + "' in route list");
        }
        ids.push_back(*id);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ids;
}

scn::WaypointId parseWaypointKey(const ConfigurationSet& config, const std::string& key) {
    std::string text = config.getString(key);
    auto id = scn::WaypointId::parse(text);
    if (!id) {
        throw SetupError(key + ": bad waypoint id '" + text + "'");
    }
    return *id;
}

/// Records every container that crosses the conference, stamped with
/// slice time. Observers run after the producers in each slice, so one
/// slice's sends land with that slice's timestamp.
class RecorderPart : public SystemPart {
public:
    explicit RecorderPart(std::filesystem::path path) : path_(std::move(path)) {}

    std::string name() const override { return "recorder"; }
    PartKind kind() const override { return PartKind::Observer; }

    void attach(BusHandle& bus) override {
        store_ = bus.listen(StoreKind::Fifo);
        writer_ = std::make_unique<RecordingWriter>(path_);
    }

    void step(std::int64_t nowUs) override {
        while (auto c = store_->take()) {
            writer_->append(nowUs, *c);
        }
    }

    void teardown() override {
        if (writer_) writer_->flush();
    }

private:
    std::filesystem::path path_;
    std::shared_ptr<DataStore> store_;
    std::unique_ptr<RecordingWriter> writer_;
};

/// Dumps vehicle state samples as CSV for plotting and debugging.
class TraceDumpPart : public SystemPart {
public:
    explicit TraceDumpPart(std::filesystem::path path) : path_(std::move(path)) {}

    std::string name() const override { return "trace-dump"; }
    PartKind kind() const override { return PartKind::Observer; }

    void attach(BusHandle& bus) override {
        store_ = bus.listen(StoreKind::Fifo, {msg::kVehicleState});
        out_.open(path_);
        if (!out_) {
            throw Error("cannot open trace file " + path_.string());
        }
        out_ << "time_us,vehicle,x,y,heading,speed\n";
    }

    void step(std::int64_t) override {
        while (auto c = store_->take()) {
            auto [vehicleId, state] = msg::parseVehicleState(*c);
            char line[160];
            std::snprintf(line, sizeof line, "%lld,%d,%.6f,%.6f,%.6f,%.6f\n",
                          static_cast<long long>(state.timestampUs), vehicleId,
                          state.position.x, state.position.y, state.heading,
                          state.speed);
            out_ << line;
        }
    }

    void teardown() override { out_.close(); }

private:
    std::filesystem::path path_;
    std::shared_ptr<DataStore> store_;
    std::ofstream out_;
};

/// Sends RUNNING pulses on behalf of the SUT modules so the embedded
/// supercomponent sees them alive. Emits at t=0 and every interval
/// after that.
class PulseEmitterPart : public SystemPart {
public:
    PulseEmitterPart(std::vector<ModuleDescriptor> descriptors, std::int64_t intervalUs)
        : descriptors_(std::move(descriptors)), intervalUs_(intervalUs) {}

    std::string name() const override { return "pulse-emitter"; }
    PartKind kind() const override { return PartKind::Context; }

    void attach(BusHandle& bus) override { bus_ = &bus; }

    void step(std::int64_t nowUs) override {
        if (nowUs % intervalUs_ != 0) return;
        for (const auto& d : descriptors_) {
            bus_->send(msg::makePulse({d, LifecycleState::Running, nowUs}, nowUs));
        }
    }

private:
    std::vector<ModuleDescriptor> descriptors_;
    std::int64_t intervalUs_;
    BusHandle* bus_ = nullptr;
};

/// Drives every scripted (point-driver) situation object along its
/// route at constant speed and publishes their vehicle states. Start
/// triggers are evaluated against a snapshot taken at the top of each
/// slice so object declaration order cannot change the outcome.
class TrafficPart : public SystemPart {
public:
    TrafficPart(std::shared_ptr<const WorldContext> world, double stepSeconds)
        : world_(std::move(world)), stepSeconds_(stepSeconds) {
        for (const auto& object : world_->situation.objects) {
            const auto* driver = std::get_if<scn::PointDriver>(&object.behavior);
            if (!driver) continue;
            objects_.push_back(makeScripted(object, *driver));
            ownIds_.push_back(object.id);
        }
    }

    bool empty() const { return objects_.empty(); }

    std::string name() const override { return "traffic"; }
    PartKind kind() const override { return PartKind::Context; }

    void attach(BusHandle& bus) override {
        bus_ = &bus;
        stateStore_ = bus.listen(StoreKind::Fifo, {msg::kVehicleState});
    }

    void step(std::int64_t nowUs) override {
        while (auto c = stateStore_->take()) {
            auto [vehicleId, state] = msg::parseVehicleState(*c);
            if (std::find(ownIds_.begin(), ownIds_.end(), vehicleId) == ownIds_.end()) {
                external_[vehicleId] = state;
            }
        }

        std::map<std::int32_t, View> views;
        for (const auto& o : objects_) {
            views[o.id] = {o.path.poseAt(o.arc).position,
                           o.started && !o.halted && o.speed > 0.0};
        }
        for (const auto& [vehicleId, state] : external_) {
            views[vehicleId] = {state.position, state.speed > 1e-9};
        }

        for (auto& o : objects_) {
            if (!o.started && conditionMet(o, views)) {
                o.started = true;
            }
            bool moving = o.started && !o.halted;
            Pose pose = o.path.poseAt(o.arc);
            VehicleState state{pose.position, pose.heading, moving ? o.speed : 0.0,
                               0.0, nowUs};
            bus_->send(msg::makeVehicleState(o.id, state, nowUs));
            if (moving) {
                o.arc += o.speed * stepSeconds_;
                if (o.arc >= o.stopArc) {
                    o.arc = o.stopArc;
                    o.halted = true;
                }
            }
        }
    }

private:
    struct View {
        Vec2 position;
        bool moving = false;
    };

    struct Scripted {
        std::int32_t id = 0;
        double speed = 0.0;
        PolylinePath path;
        double stopArc = 0.0;
        scn::StartCondition start;
        const scn::Polygon* startPolygon = nullptr;
        bool started = false;
        bool halted = false;
        double arc = 0.0;
    };

    Scripted makeScripted(const scn::SituationObject& object,
                          const scn::PointDriver& driver) const {
        std::string label = "object " + std::to_string(object.id);
        if (driver.route.empty()) {
            throw SetupError(label + " has an empty route");
        }
        std::vector<Vec2> points;
        std::vector<double> arcs;
        double arc = 0.0;
        for (const auto& id : driver.route) {
            const auto* wp = world_->scenario.findWaypoint(id);
            if (!wp) {
                throw SetupError(label + " routes through unknown waypoint " + id.str());
            }
            if (!points.empty()) arc += distance(points.back(), wp->position);
            points.push_back(wp->position);
            arcs.push_back(arc);
        }

        Scripted s{object.id, driver.speed, PolylinePath(points), 0.0,
                   object.start};
        s.stopArc = s.path.length();
        if (object.stop.kind == scn::StopKind::OnReachingPoint) {
            for (std::size_t i = 0; i < driver.route.size(); ++i) {
                if (driver.route[i] == object.stop.point) {
                    s.stopArc = arcs[i];
                    break;
                }
            }
        }
        if (object.start.kind == scn::StartKind::OnEnteringPolygon) {
            for (const auto& polygon : world_->scenario.polygons) {
                if (polygon.id == object.start.polygonId) {
                    s.startPolygon = &polygon;
                    break;
                }
            }
            if (!s.startPolygon) {
                throw SetupError(label + " watches unknown polygon " +
                                 std::to_string(object.start.polygonId));
            }
        }
        return s;
    }

    static bool conditionMet(const Scripted& object,
                             const std::map<std::int32_t, View>& views) {
        switch (object.start.kind) {
            case scn::StartKind::Immediately:
                return true;
            case scn::StartKind::OnMoving: {
                auto it = views.find(object.start.objectId);
                return it != views.end() && it->second.moving;
            }
            case scn::StartKind::OnEnteringPolygon: {
                auto it = views.find(object.start.objectId);
                return it != views.end() &&
                       pointInPolygon(it->second.position,
                                      object.startPolygon->vertices);
            }
        }
        return false;
    }

    std::shared_ptr<const WorldContext> world_;
    double stepSeconds_;
    std::vector<Scripted> objects_;
    std::vector<std::int32_t> ownIds_;
    std::map<std::int32_t, VehicleState> external_;
    BusHandle* bus_ = nullptr;
    std::shared_ptr<DataStore> stateStore_;
};

/// Kinematic plant for one externally driven vehicle. Publishes the
/// current state each slice, then integrates the newest command seen on
/// the bus (zero-order hold between commands).
class VehicleModelPart : public SystemPart {
public:
    VehicleModelPart(std::int32_t vehicleId, VehicleState initial, VehicleLimits limits,
                     double stepSeconds)
        : vehicleId_(vehicleId), state_(initial), limits_(limits),
          stepSeconds_(stepSeconds) {}

    std::string name() const override {
        return "vehicle-model-" + std::to_string(vehicleId_);
    }
    PartKind kind() const override { return PartKind::Context; }

    void attach(BusHandle& bus) override {
        bus_ = &bus;
        commandStore_ = bus.listen(StoreKind::Fifo, {msg::kVehicleCommand});
    }

    void step(std::int64_t nowUs) override {
        while (auto c = commandStore_->take()) {
            auto [vehicleId, command] = msg::parseVehicleCommand(*c);
            if (vehicleId == vehicleId_) command_ = command;
        }
        state_.timestampUs = nowUs;
        bus_->send(msg::makeVehicleState(vehicleId_, state_, nowUs));
        state_ = stepKinematic(state_, command_, stepSeconds_, limits_);
    }

    const VehicleState& state() const { return state_; }

private:
    std::int32_t vehicleId_;
    VehicleState state_;
    VehicleCommand command_;
    VehicleLimits limits_;
    double stepSeconds_;
    BusHandle* bus_ = nullptr;
    std::shared_ptr<DataStore> commandStore_;
};

/// Simulated scanner: static world geometry plus the other vehicles'
/// rectangle footprints at their last published poses. Emits nothing
/// until its carrier vehicle's first state arrives (one slice in).
class ScannerPart : public SystemPart {
public:
    ScannerPart(std::int32_t scannerId, std::int32_t vehicleId, ScannerMount mount,
                double noiseSigma, std::uint64_t seed,
                std::shared_ptr<const WorldContext> world)
        : scannerId_(scannerId), vehicleId_(vehicleId), mount_(mount),
          sigma_(noiseSigma), rng_(seed), world_(std::move(world)) {
        mount_.validate();
        if (sigma_ < 0.0) {
            throw SetupError("scanner " + std::to_string(scannerId_) +
                             ": noise sigma must be >= 0");
        }
        segments_ = scn::extractObstacleGeometry(world_->scenario, {});
        staticCount_ = segments_.size();
        for (const auto& object : world_->situation.objects) {
            shapes_[object.id] = object.shape;
        }
    }

    std::string name() const override {
        return "scanner-" + std::to_string(scannerId_);
    }
    PartKind kind() const override { return PartKind::Context; }

    void attach(BusHandle& bus) override {
        bus_ = &bus;
        stateStore_ = bus.listen(StoreKind::Fifo, {msg::kVehicleState});
    }

    void step(std::int64_t nowUs) override {
        while (auto c = stateStore_->take()) {
            auto [vehicleId, state] = msg::parseVehicleState(*c);
            states_[vehicleId] = state;
        }
        auto self = states_.find(vehicleId_);
        if (self == states_.end()) return;

        segments_.resize(staticCount_);
        for (const auto& [vehicleId, state] : states_) {
            if (vehicleId == vehicleId_) continue;
            auto shape = shapes_.find(vehicleId);
            if (shape == shapes_.end()) continue;
            auto corners = scn::rectangleCorners(shape->second,
                                                 {state.position, state.heading});
            for (std::size_t i = 0; i < corners.size(); ++i) {
                segments_.push_back({corners[i], corners[(i + 1) % corners.size()],
                                     scn::kDynamicObstacleHeight});
            }
        }

        Pose pose{self->second.position, self->second.heading};
        ScanResult result = scan(segments_, pose, mount_);
        result.scannerId = scannerId_;
        result.vehicleId = vehicleId_;
        result.timestampUs = nowUs;
        if (sigma_ > 0.0) {
            addRangeNoise(result, sigma_, mount_.maxRange, rng_);
        }
        bus_->send(msg::makeScanResult(result, nowUs));
    }

private:
    std::int32_t scannerId_;
    std::int32_t vehicleId_;
    ScannerMount mount_;
    double sigma_;
    std::mt19937_64 rng_;
    std::shared_ptr<const WorldContext> world_;
    std::vector<Segment> segments_;
    std::size_t staticCount_ = 0;
    std::map<std::int32_t, scn::Rectangle> shapes_;
    std::map<std::int32_t, VehicleState> states_;
    BusHandle* bus_ = nullptr;
    std::shared_ptr<DataStore> stateStore_;
};

/// Default system under test: discovers its configuration over DMCP,
/// resolves its mission route, and tracks it with a pure-pursuit
/// steering law plus a braking profile that stops at the destination.
class MissionFollowerPart : public SystemPart {
public:
    MissionFollowerPart(std::int32_t vehicleId, std::shared_ptr<const WorldContext> world)
        : vehicleId_(vehicleId), world_(std::move(world)) {}

    std::string name() const override {
        return "mission-follower-" + std::to_string(vehicleId_);
    }
    PartKind kind() const override { return PartKind::Sut; }

    void attach(BusHandle& bus) override {
        bus_ = &bus;
        stateStore_ = bus.listen(StoreKind::Fifo, {msg::kVehicleState});
        configStore_ = bus.listen(StoreKind::Fifo, {msg::kConfigResponse});
    }

    void configure(SetupPump& pump) override {
        ModuleDescriptor self{"sut", static_cast<std::uint32_t>(vehicleId_), "1.0"};
        DmcpEndpoint endpoint{
            [this](const Container& c) { bus_->send(c); },
            [this, &pump](std::chrono::milliseconds) -> std::optional<Container> {
                pump.pump();
                return configStore_->take();
            },
            [&pump] { return pump.nowUs(); },
        };
        ConfigurationSet config = discover(self, endpoint);

        limits_ = VehicleLimits::fromConfig(config);
        cruiseSpeed_ = config.getDouble("sut.cruisespeed", 6.0);
        lookahead_ = config.getDouble("sut.lookahead", 4.0);
        stepSeconds_ = config.getDouble("global.sim.step", 0.01);
        if (cruiseSpeed_ <= 0.0 || lookahead_ <= 0.0) {
            throw SetupError(name() + ": cruise speed and lookahead must be positive");
        }
        path_.emplace(polylineFromWaypoints(world_->graph,
                                            missionRoute(world_->graph, config)));
    }

    void step(std::int64_t nowUs) override {
        while (auto c = stateStore_->take()) {
            auto [vehicleId, state] = msg::parseVehicleState(*c);
            if (vehicleId == vehicleId_) {
                state_ = state;
                haveState_ = true;
            }
        }
        if (!haveState_ || !path_) return;

        double s = std::max(projectArc(state_.position), lastArc_);
        lastArc_ = s;
        double remaining = path_->length() - s;

        Vec2 target = path_->poseAt(std::min(s + lookahead_, path_->length())).position;
        double lookDist = distance(state_.position, target);
        double alpha = normalizeAngle(
            std::atan2(target.y - state_.position.y, target.x - state_.position.x) -
            state_.heading);
        double steering = std::atan2(2.0 * limits_.wheelbase * std::sin(alpha),
                                     std::max(lookDist, 0.5));

        // Comfort braking toward the route end, hard floor right at it.
        double targetSpeed = std::min(
            cruiseSpeed_, std::sqrt(2.0 * kDecel * std::max(0.0, remaining - 0.1)));
        if (remaining <= 0.15) targetSpeed = 0.0;
        double accel = (targetSpeed - state_.speed) / stepSeconds_;

        bus_->send(msg::makeVehicleCommand(vehicleId_, {accel, steering}, nowUs, nowUs));
    }

private:
    static constexpr double kDecel = 2.0;  // m/s^2, comfort braking

    /// Arc length of the closest polyline point to p.
    double projectArc(Vec2 p) const {
        const auto& pts = path_->points();
        double best = 0.0;
        double bestDist = distance(p, pts.front());
        double arc = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Vec2 ab = pts[i + 1] - pts[i];
            double len = norm(ab);
            if (len > 0.0) {
                double t = std::clamp(dot(p - pts[i], ab) / (len * len), 0.0, 1.0);
                Vec2 q = pts[i] + t * ab;
                double d = distance(p, q);
                if (d < bestDist) {
                    bestDist = d;
                    best = arc + t * len;
                }
            }
            arc += len;
        }
        return best;
    }

    std::int32_t vehicleId_;
    std::shared_ptr<const WorldContext> world_;
    VehicleLimits limits_;
    double cruiseSpeed_ = 6.0;
    double lookahead_ = 4.0;
    double stepSeconds_ = 0.01;
    std::optional<PolylinePath> path_;
    VehicleState state_;
    bool haveState_ = false;
    double lastArc_ = 0.0;
    BusHandle* bus_ = nullptr;
    std::shared_ptr<DataStore> stateStore_;
    std::shared_ptr<DataStore> configStore_;
};

std::vector<const scn::SituationObject*> externallyDriven(const scn::SituationModel& situation) {
    std::vector<const scn::SituationObject*> out;
    for (const auto& object : situation.objects) {
        if (std::holds_alternative<scn::ExternalDriver>(object.behavior)) {
            out.push_back(&object);
        }
    }
    return out;
}

/// Initial pose for a mission: at the first route waypoint, facing the
/// first waypoint that is some distance away.
VehicleState initialStateFor(const scn::RouteGraph& graph,
                             const std::vector<scn::WaypointId>& route) {
    const auto& nodes = graph.nodes();
    VehicleState state;
    state.position = nodes.at(route.front());
    for (std::size_t i = 1; i < route.size(); ++i) {
        Vec2 next = nodes.at(route[i]);
        if (distance(state.position, next) > 0.0) {
            state.heading = std::atan2(next.y - state.position.y,
                                       next.x - state.position.x);
            break;
        }
    }
    return state;
}

void requireValid(const std::vector<scn::SemanticError>& issues, const std::string& what) {
    if (issues.empty()) return;
    const auto& first = issues.front();
    std::string text = what + " fails validation (" + std::to_string(issues.size()) +
                       " issue" + (issues.size() == 1 ? "" : "s") + "): " + first.rule +
                       " " + first.subject;
    if (!first.detail.empty()) text += ": " + first.detail;
    throw SetupError(text);
}

} // namespace

std::vector<scn::WaypointId> missionRoute(const scn::RouteGraph& graph,
                                          const ConfigurationSet& effective) {
    std::string routeText = effective.getString("sut.mission.route", "");
    if (!routeText.empty()) {
        auto ids = parseWaypointList(routeText);
        for (const auto& id : ids) {
            if (!graph.hasNode(id)) {
                throw SetupError("sut.mission.route: unknown waypoint " + id.str());
            }
        }
        return ids;
    }
    if (!effective.contains("sut.mission.from") || !effective.contains("sut.mission.to")) {
        throw SetupError(
            "mission needs sut.mission.from and sut.mission.to (or sut.mission.route)");
    }
    auto from = parseWaypointKey(effective, "sut.mission.from");
    auto to = parseWaypointKey(effective, "sut.mission.to");
    if (!graph.hasNode(from) || !graph.hasNode(to)) {
        throw SetupError("mission endpoint is not a scenario waypoint");
    }
    auto route = scn::shortestRoute(graph, from, to);
    if (!route) {
        throw SetupError("no route from " + from.str() + " to " + to.str());
    }
    return route->waypoints;
}

std::vector<std::shared_ptr<Validator>> buildValidators(const scn::RouteGraph& graph,
                                                        const ConfigurationSet& config,
                                                        std::int32_t vehicleId) {
    std::vector<std::shared_ptr<Validator>> out;
    auto route = missionRoute(graph, config);

    if (config.getBool("validator.destination.enabled", true)) {
        double radius = config.getDouble("validator.destination.radius", 2.0);
        Vec2 destination = graph.nodes().at(route.back());
        out.push_back(
            std::make_shared<DestinationReachedValidator>(vehicleId, destination, radius));
    }
    if (config.getBool("validator.route.enabled", true)) {
        double passRadius = config.getDouble("validator.route.passradius", 2.0);
        scn::WaypointId from = config.contains("sut.mission.from")
                                   ? parseWaypointKey(config, "sut.mission.from")
                                   : route.front();
        scn::WaypointId to = config.contains("sut.mission.to")
                                 ? parseWaypointKey(config, "sut.mission.to")
                                 : route.back();
        out.push_back(std::make_shared<ShortestRouteChosenValidator>(vehicleId, graph,
                                                                     from, to, passRadius));
    }
    if (config.getBool("validator.deviation.enabled", true)) {
        double maxDeviation = config.getDouble("validator.deviation.max", 2.0);
        out.push_back(std::make_shared<DistanceToRouteValidator>(
            vehicleId, polylineFromWaypoints(graph, route), maxDeviation));
    }
    return out;
}

MissionRun buildMissionRun(const scn::ScenarioModel& scenario,
                           const scn::SituationModel& situation,
                           const ConfigurationSet& master,
                           const ConfigurationSet& suite,
                           const MissionRunOptions& options) {
    requireValid(scn::validate(scenario), "scenario");
    requireValid(scn::validate(situation, scenario), "situation");

    auto world = std::make_shared<WorldContext>(
        WorldContext{scenario, situation, scn::RouteGraph::fromScenario(scenario)});

    ConfigurationSet merged = master;
    for (const auto& entry : suite.entries()) {
        merged.set(entry.key, entry.value);
    }

    if (!merged.contains("global.sim.duration")) {
        throw SetupError("global.sim.duration is required");
    }
    double stepSeconds = merged.getDouble("global.sim.step", 0.01);
    std::int64_t stepUs = std::llround(stepSeconds * 1e6);
    std::int64_t durationUs = std::llround(merged.getDouble("global.sim.duration") * 1e6);
    if (stepUs <= 0) {
        throw SetupError("global.sim.step must be positive");
    }

    auto externals = externallyDriven(situation);
    if (!options.sutFactories.empty() && options.sutFactories.size() != externals.size()) {
        throw SetupError("got " + std::to_string(options.sutFactories.size()) +
                         " sut factories for " + std::to_string(externals.size()) +
                         " externally driven objects");
    }

    MissionRun out;
    out.world = world;
    out.durationUs = durationUs;
    out.runner = std::make_unique<SimulationRunner>(merged, stepUs, options.seed);
    auto& runner = *out.runner;

    if (!externals.empty()) {
        std::vector<ModuleDescriptor> descriptors;
        descriptors.reserve(externals.size());
        for (const auto* object : externals) {
            descriptors.push_back(
                {"sut", static_cast<std::uint32_t>(object->id), "1.0"});
        }
        std::int64_t pulseUs =
            std::llround(merged.getDouble("global.dmcp.pulseinterval", 1.0) * 1e6);
        runner.addPart(std::make_shared<PulseEmitterPart>(std::move(descriptors), pulseUs));
    }

    auto traffic = std::make_shared<TrafficPart>(world, stepSeconds);
    if (!traffic->empty()) {
        runner.addPart(traffic);
    }

    VehicleLimits limits = VehicleLimits::fromConfig(merged);
    for (const auto* object : externals) {
        ConfigurationSet effective =
            filterConfigurationFor(merged, "sut", static_cast<std::uint32_t>(object->id));
        auto route = missionRoute(world->graph, effective);
        runner.addPart(std::make_shared<VehicleModelPart>(
            object->id, initialStateFor(world->graph, route), limits, stepSeconds));
    }

    int scannerCount = static_cast<int>(merged.getInt("scanner.count", 0));
    for (int n = 1; n <= scannerCount; ++n) {
        std::string prefix = "scanner." + std::to_string(n) + ".";
        if (!merged.contains(prefix + "vehicle")) {
            throw SetupError(prefix + "vehicle is required");
        }
        ScannerMount mount;
        mount.offset = {merged.getDouble(prefix + "x", 0.0),
                        merged.getDouble(prefix + "y", 0.0)};
        mount.height = merged.getDouble(prefix + "height", 0.5);
        mount.yaw = merged.getDouble(prefix + "yaw", 0.0);
        mount.fovDeg = merged.getDouble(prefix + "fov", 180.0);
        mount.resolutionDeg = merged.getDouble(prefix + "resolution", 1.0);
        mount.maxRange = merged.getDouble(prefix + "maxrange", 50.0);
        auto vehicleId = static_cast<std::int32_t>(merged.getInt(prefix + "vehicle"));
        double sigma = merged.getDouble(prefix + "noisesigma", 0.0);
        runner.addPart(std::make_shared<ScannerPart>(n, vehicleId, mount, sigma,
                                                     runner.drawSeed(), world));
    }

    for (std::size_t i = 0; i < externals.size(); ++i) {
        std::shared_ptr<SystemPart> sut =
            options.sutFactories.empty()
                ? std::make_shared<MissionFollowerPart>(externals[i]->id, world)
                : options.sutFactories[i](externals[i]->id, world);
        if (!sut) {
            throw SetupError("sut factory " + std::to_string(i) + " returned nothing");
        }
        runner.addPart(std::move(sut));
    }

    if (!options.recordingPath.empty()) {
        runner.addPart(std::make_shared<RecorderPart>(options.recordingPath));
    }
    if (!options.tracePath.empty()) {
        runner.addPart(std::make_shared<TraceDumpPart>(options.tracePath));
    }

    for (const auto* object : externals) {
        ConfigurationSet validatorConfig =
            filterConfigurationFor(merged, "sut", static_cast<std::uint32_t>(object->id));
        for (const auto& entry : merged.entries()) {
            if (entry.key.rfind("validator.", 0) == 0) {
                validatorConfig.set(entry.key, entry.value);
            }
        }
        for (auto& validator : buildValidators(world->graph, validatorConfig, object->id)) {
            runner.addValidator(validator);
            out.validators.push_back(std::move(validator));
        }
    }

    return out;
}

OfflineEvaluation evaluateRecording(const std::filesystem::path& recording,
                                    std::vector<std::shared_ptr<Validator>> validators) {
    RecordingReader reader(recording);
    OfflineEvaluation out;
    while (auto entry = reader.next()) {
        out.endTimeUs = entry->captureTimestampUs;
        if (auto sample = traceSampleFrom(entry->container)) {
            for (auto& validator : validators) {
                validator->onSample(*sample);
            }
        }
    }
    out.passed = true;
    for (auto& validator : validators) {
        validator->finish(out.endTimeUs);
        out.verdicts.push_back(validator->verdict());
        out.passed = out.passed && validator->verdict().passed;
    }
    return out;
}

} // namespace simkit::sim
