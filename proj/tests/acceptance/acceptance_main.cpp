// Acceptance gate: exercises every advertised guarantee once, prints one
// PASS/FAIL line per criterion, and exits with the number of failures.
// Tolerances are pinned here, next to the checks that use them.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "record_gen.hpp"
#include "simkit/bus.hpp"
#include "simkit/container.hpp"
#include "simkit/crc32.hpp"
#include "simkit/datastore.hpp"
#include "simkit/dmcp.hpp"
#include "simkit/messages.hpp"
#include "simkit/routing.hpp"
#include "simkit/sensor.hpp"
#include "simkit/sim/assembly.hpp"
#include "simkit/vehicle.hpp"

using namespace simkit;
namespace fs = std::filesystem;

namespace {

// Pinned acceptance tolerances and budgets.
constexpr double kRoundTripBudgetSeconds = 5.0;   // criterion 1
constexpr double kRouteCostTolMeters = 1e-9;      // criterion 6
constexpr double kCircleRadiusRelTol = 0.01;      // criterion 7
constexpr double kStraightTolMeters = 1e-9;       // criterion 7
constexpr double kScanTolMeters = 1e-9;           // criterion 8
constexpr double kSpeedBudgetSeconds = 2.0;       // criterion 10

struct Criterion {
    std::vector<std::string> failures;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

struct CommandResult {
    int exitCode = -1;
    std::string output;
};

CommandResult runCommand(const std::string& command) {
    std::string full = command + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    CommandResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = pclose(pipe);
    result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string tool(const std::string& name) {
    return std::string(SIMKIT_TOOL_DIR) + "/" + name;
}

std::string fixture(const std::string& name) {
    return std::string(SIMKIT_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> validatorLines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("VALIDATOR ", 0) == 0) lines.push_back(line);
    }
    return lines;
}

struct TempDir {
    TempDir() {
        path = fs::temp_directory_path() /
               ("simkit-acceptance-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path path;
};

// ---------------------------------------------------------------- 1

void criterion1(Criterion& c) {
    auto schema = testgen::richSchema();
    std::mt19937_64 rng(20260814);

    auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    Record last;
    for (int i = 0; i < 1000; ++i) {
        Record r = testgen::randomRecord(*schema, rng);
        Bytes frame = encode(*schema, r, 100 + i % 7, i);
        if (decode(frame, *schema) != r) ++mismatches;
        last = r;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start)
                         .count();
    c.require(mismatches == 0,
              fmt("%d of 1000 random records failed the round trip", mismatches));
    c.require(seconds < kRoundTripBudgetSeconds,
              fmt("1000 round trips took %.2f s (budget %.1f s)", seconds,
                  kRoundTripBudgetSeconds));

    // field permutations of one frame all decode to the same record
    Container container = decodeFrame(encode(*schema, last, 100, 0));
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(container.payload.begin(), container.payload.end(), rng);
        if (decode(encodeFrame(container), *schema) != last) {
            c.require(false, "a field permutation decoded differently");
            break;
        }
    }

    // an unknown field is skipped without disturbing the known ones
    Container extended = decodeFrame(encode(*schema, last, 100, 0));
    SerializedField unknown{fieldKey("totally_unknown_field"), Bytes{1, 2, 3, 4}, 0};
    extended.payload.insert(extended.payload.begin() + 3, unknown);
    c.require(decode(encodeFrame(extended), *schema) == last,
              "an unknown payload field changed the decoded record");

    c.note = fmt("1000 round trips in %.2f s, 20 permutations, unknown-field fixture",
                 seconds);
}

// ---------------------------------------------------------------- 2

void criterion2(Criterion& c) {
    auto v1 = std::make_shared<RecordSchema>("pose");
    v1->add("x", SchemaType::float64());
    v1->add("y", SchemaType::float64());

    auto v2 = std::make_shared<RecordSchema>("pose");
    v2->add("x", SchemaType::float64());
    v2->add("y", SchemaType::float64());
    v2->add("z", SchemaType::float64(), Value::float64(7.5));

    Record newer;
    newer.set("x", Value::float64(1.25));
    newer.set("y", Value::float64(-2.5));
    newer.set("z", Value::float64(99.75));

    // new writer, old reader: the extra field vanishes, the rest is exact
    Record projected = decode(encode(*v2, newer, 100, 0), *v1);
    Record expected;
    expected.set("x", Value::float64(1.25));
    expected.set("y", Value::float64(-2.5));
    c.require(projected == expected, "v2 payload did not project exactly onto v1");

    // old writer, new reader: the missing field takes its declared default
    Record older;
    older.set("x", Value::float64(3.0));
    older.set("y", Value::float64(4.0));
    Record upgraded = decode(encode(*v1, older, 100, 0), *v2);
    const Value* z = upgraded.find("z");
    c.require(z != nullptr && *z == Value::float64(7.5),
              "v1 payload did not gain the v2 default");
    c.require(upgraded.find("x") != nullptr && *upgraded.find("x") == Value::float64(3.0),
              "v1 fields were disturbed by the upgrade");

    c.note = "v2->v1 projection exact, v1->v2 applies the declared default";
}

// ---------------------------------------------------------------- 3

std::uint32_t crcOracle(std::string_view s) {
    std::uint32_t crc = 0xFFFFFFFFu;
    for (unsigned char ch : s) {
        crc ^= ch;
        for (int bit = 0; bit < 8; ++bit) {
            crc = (crc >> 1) ^ ((crc & 1u) ? 0xEDB88320u : 0u);
        }
    }
    return crc ^ 0xFFFFFFFFu;
}

void criterion3(Criterion& c) {
    std::mt19937_64 rng(3);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::uniform_int_distribution<int> lengthDist(1, 24);
    std::uniform_int_distribution<std::size_t> charDist(0, alphabet.size() - 1);

    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        std::string name;
        int len = lengthDist(rng);
        for (int k = 0; k < len; ++k) name += alphabet[charDist(rng)];
        if (fieldKey(name) != crcOracle(name)) ++mismatches;
    }
    c.require(mismatches == 0, fmt("%d of 100 names disagreed with the oracle", mismatches));
    c.require(fieldKey("") == 0, "fieldKey(\"\") is not 0");
    c.note = "100 random names match a bitwise CRC-32, empty name hashes to 0";
}

// ---------------------------------------------------------------- 4

Container stamped(std::uint32_t dataTypeId, std::int64_t stamp) {
    Container c;
    c.dataTypeId = dataTypeId;
    c.sentTimestampUs = stamp;
    return c;
}

void criterion4(Criterion& c) {
    SimConference conference((ConferenceId(7)));
    auto sender = conference.createSender();
    std::vector<std::shared_ptr<DataStore>> listeners;
    for (int i = 0; i < 3; ++i) {
        auto store = std::make_shared<DataStore>(StoreKind::Fifo);
        conference.addListener(store);
        listeners.push_back(store);
    }

    const int sends = 300;
    for (int i = 0; i < sends; ++i) {
        sender->send(stamped(100 + i % 5, i));
    }
    std::size_t delivered = conference.deliverPending();
    c.require(delivered == static_cast<std::size_t>(sends),
              fmt("expected %d drained containers, got %zu", sends, delivered));
    for (const auto& store : listeners) {
        std::int64_t next = 0;
        while (auto container = store->take()) {
            if (container->sentTimestampUs != next) break;
            ++next;
        }
        c.require(next == sends,
                  fmt("a listener saw %lld of %d sends exactly once, in order",
                      static_cast<long long>(next), sends));
    }
    c.require(conference.deliverPending() == 0, "a second delivery pass was not empty");

    // store discipline under one long randomized sequence per kind
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::uint32_t> typeDist(100, 119);
    std::uniform_int_distribution<int> opDist(0, 9);

    for (StoreKind kind : {StoreKind::Fifo, StoreKind::Lifo, StoreKind::KeyValue}) {
        for (std::size_t capacity : {std::size_t{0}, std::size_t{7}}) {
            if (kind == StoreKind::KeyValue && capacity != 0) continue;
            DataStore store(kind, capacity);
            std::deque<Container> queueModel;
            std::map<std::uint32_t, Container> mapModel;
            bool ok = true;
            std::int64_t stamp = 0;

            for (int op = 0; op < 10'000 && ok; ++op) {
                if (opDist(rng) < 7) {
                    Container container = stamped(typeDist(rng), stamp++);
                    store.push(container);
                    if (kind == StoreKind::KeyValue) {
                        mapModel[container.dataTypeId] = container;
                    } else {
                        queueModel.push_back(container);
                        if (capacity != 0 && queueModel.size() > capacity) {
                            queueModel.pop_front();
                        }
                    }
                } else {
                    auto got = store.take();
                    std::optional<Container> want;
                    if (kind == StoreKind::Fifo && !queueModel.empty()) {
                        want = queueModel.front();
                        queueModel.pop_front();
                    } else if (kind == StoreKind::Lifo && !queueModel.empty()) {
                        want = queueModel.back();
                        queueModel.pop_back();
                    } else if (kind == StoreKind::KeyValue && !mapModel.empty()) {
                        want = mapModel.begin()->second;
                        mapModel.erase(mapModel.begin());
                    }
                    ok = got == want;
                }
            }
            std::size_t modelSize =
                kind == StoreKind::KeyValue ? mapModel.size() : queueModel.size();
            c.require(ok && store.size() == modelSize,
                      fmt("store kind %d capacity %zu diverged from its model",
                          static_cast<int>(kind), capacity));
        }
    }
    c.note = "3x300 exactly-once fan-out, 10k-operation store models agree";
}

// ---------------------------------------------------------------- 5

void criterion5(Criterion& c) {
    auto master = ConfigurationSet::parse(
        "global.sim.step=0.01\n"
        "alpha.gain=1\n"
        "alpha:2.gain=2\n"
        "alpha.mode=fast\n"
        "beta.rate=9\n"
        "global.dmcp.pulseinterval=1.0\n"
        "global.dmcp.timeoutpulses=3\n");

    auto printKeys = [](const ConfigurationSet& set) {
        std::string out;
        for (const auto& entry : set.entries()) out += entry.key + "=" + entry.value + ";";
        return out;
    };

    // module + global + override, in master order, override applied in place
    ConfigurationSet alpha2 = filterConfigurationFor(master, "alpha", 2);
    c.require(printKeys(alpha2) ==
                  "global.sim.step=0.01;alpha.gain=2;alpha.mode=fast;"
                  "global.dmcp.pulseinterval=1.0;global.dmcp.timeoutpulses=3;",
              "alpha:2 filter returned " + printKeys(alpha2));

    ConfigurationSet alpha1 = filterConfigurationFor(master, "alpha", 1);
    c.require(printKeys(alpha1) ==
                  "global.sim.step=0.01;alpha.gain=1;alpha.mode=fast;"
                  "global.dmcp.pulseinterval=1.0;global.dmcp.timeoutpulses=3;",
              "alpha:1 filter returned " + printKeys(alpha1));

    ConfigurationSet beta = filterConfigurationFor(master, "beta", 1);
    c.require(printKeys(beta) ==
                  "global.sim.step=0.01;beta.rate=9;"
                  "global.dmcp.pulseinterval=1.0;global.dmcp.timeoutpulses=3;",
              "beta filter returned " + printKeys(beta));

    // supervision: 3 missed pulses flip RUNNING to UNRESPONSIVE at the
    // first check past the deadline
    Supercomponent supercomponent(master);
    ModuleDescriptor module{"alpha", 2, "1.0"};
    auto reply = supercomponent.onContainer(msg::makeDiscover(module, 0), 0);
    c.require(reply.has_value(), "DISCOVER was not answered");
    supercomponent.onContainer(
        msg::makePulse({module, LifecycleState::Running, 0}, 0), 0);
    c.require(supercomponent.stateOf("alpha", 2) == LifecycleState::Running,
              "pulse did not mark the module RUNNING");

    supercomponent.checkSupervision(2'999'999);
    c.require(supercomponent.stateOf("alpha", 2) == LifecycleState::Running,
              "module went unresponsive before the deadline");
    supercomponent.checkSupervision(3'000'000);
    c.require(supercomponent.stateOf("alpha", 2) == LifecycleState::Unresponsive,
              "module not UNRESPONSIVE at the first check past 3 intervals");

    c.note = "filter fixtures exact, 3-missed-pulse transition on the deadline check";
}

// ---------------------------------------------------------------- 6

scn::WaypointId rid(int point) { return {1, 1, 1, point}; }

struct Oracle {
    const scn::RouteGraph& graph;

    std::optional<scn::Route> best(const scn::WaypointId& from,
                                   const scn::WaypointId& to) const {
        std::optional<scn::Route> found;
        std::vector<scn::WaypointId> path{from};
        std::map<scn::WaypointId, bool> visited;
        visited[from] = true;
        dfs(from, to, 0.0, path, visited, found);
        return found;
    }

private:
    void dfs(const scn::WaypointId& at, const scn::WaypointId& to, double cost,
             std::vector<scn::WaypointId>& path, std::map<scn::WaypointId, bool>& visited,
             std::optional<scn::Route>& found) const {
        if (at == to) {
            if (!found || cost < found->cost - 1e-12 ||
                (std::abs(cost - found->cost) <= 1e-12 && path < found->waypoints)) {
                found = scn::Route{path, cost};
            }
            return;
        }
        for (const auto& edge : graph.edgesFrom(at)) {
            if (visited[edge.target]) continue;
            visited[edge.target] = true;
            path.push_back(edge.target);
            dfs(edge.target, to, cost + edge.weight, path, visited, found);
            path.pop_back();
            visited[edge.target] = false;
        }
    }
};

std::optional<double> bellmanFordCost(const scn::RouteGraph& graph,
                                      const scn::WaypointId& from,
                                      const scn::WaypointId& to) {
    std::map<scn::WaypointId, double> dist;
    dist[from] = 0.0;
    std::size_t n = graph.nodes().size();
    for (std::size_t pass = 0; pass + 1 < n; ++pass) {
        bool changed = false;
        for (const auto& [id, position] : graph.nodes()) {
            auto it = dist.find(id);
            if (it == dist.end()) continue;
            for (const auto& edge : graph.edgesFrom(id)) {
                double candidate = it->second + edge.weight;
                auto target = dist.find(edge.target);
                if (target == dist.end() || candidate < target->second) {
                    dist[edge.target] = candidate;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    auto it = dist.find(to);
    if (it == dist.end()) return std::nullopt;
    return it->second;
}

void checkGraphAgainstOracle(Criterion& c, const scn::RouteGraph& graph,
                             const std::string& label) {
    Oracle oracle{graph};
    for (const auto& [from, fromPos] : graph.nodes()) {
        for (const auto& [to, toPos] : graph.nodes()) {
            auto got = scn::shortestRoute(graph, from, to);
            auto want = oracle.best(from, to);
            if (got.has_value() != want.has_value()) {
                c.require(false, label + ": reachability disagrees at " + from.str() +
                                     "->" + to.str());
                return;
            }
            if (!got) continue;
            if (std::abs(got->cost - want->cost) > kRouteCostTolMeters ||
                got->waypoints != want->waypoints) {
                c.require(false, label + ": route differs from oracle at " + from.str() +
                                     "->" + to.str());
                return;
            }
        }
    }
}

void criterion6(Criterion& c) {
    std::vector<std::pair<std::string, scn::RouteGraph>> fixtures;

    {
        scn::RouteGraph g;
        for (int i = 1; i <= 4; ++i) g.addNode(rid(i), {10.0 * i, 0.0});
        for (int i = 1; i <= 3; ++i) g.addEdge(rid(i), rid(i + 1));
        g.addEdge(rid(1), rid(4));  // equal-cost direct edge: 30 both ways
        fixtures.emplace_back("chain-with-shortcut", g);
    }
    {
        // mirror diamond, both branches exactly 3-4-5 triangles
        scn::RouteGraph g;
        g.addNode(rid(1), {0.0, 0.0});
        g.addNode(rid(2), {3.0, 4.0});
        g.addNode(rid(3), {3.0, -4.0});
        g.addNode(rid(4), {6.0, 0.0});
        g.addEdge(rid(1), rid(2));
        g.addEdge(rid(1), rid(3));
        g.addEdge(rid(2), rid(4));
        g.addEdge(rid(3), rid(4));
        fixtures.emplace_back("mirror-diamond", g);
    }
    {
        // disconnected pair plus a one-way edge
        scn::RouteGraph g;
        g.addNode(rid(1), {0.0, 0.0});
        g.addNode(rid(2), {5.0, 0.0});
        g.addNode(rid(3), {50.0, 50.0});
        g.addEdge(rid(1), rid(2));
        fixtures.emplace_back("disconnected", g);
    }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    for (int trial = 0; trial < 12; ++trial) {
        scn::RouteGraph g;
        int n = 5 + static_cast<int>(rng() % 4);  // 5..8 nodes
        for (int i = 1; i <= n; ++i) g.addNode(rid(i), {coord(rng), coord(rng)});
        std::uniform_int_distribution<int> pick(1, n);
        for (int e = 0; e < 2 * n; ++e) {
            int a = pick(rng);
            int b = pick(rng);
            if (a == b) continue;
            g.addEdge(rid(a), rid(b));
        }
        fixtures.emplace_back("random-" + std::to_string(trial), g);
    }

    for (const auto& [label, graph] : fixtures) {
        checkGraphAgainstOracle(c, graph, label);
        if (!c.failures.empty()) break;
    }

    // deterministic tie-break on the constructed equal-cost pair
    const auto& diamond = fixtures[1].second;
    std::vector<scn::WaypointId> expected{rid(1), rid(2), rid(4)};
    for (int i = 0; i < 5; ++i) {
        auto route = scn::shortestRoute(diamond, rid(1), rid(4));
        c.require(route && route->waypoints == expected &&
                      std::abs(route->cost - 10.0) <= kRouteCostTolMeters,
                  "tie-break did not deterministically pick the lower branch");
        if (!c.failures.empty()) break;
    }

    // Bellman-Ford cost agreement on 100 random graphs up to 50 nodes
    for (int trial = 0; trial < 100 && c.failures.empty(); ++trial) {
        scn::RouteGraph g;
        int n = 10 + static_cast<int>(rng() % 41);  // 10..50 nodes
        for (int i = 1; i <= n; ++i) g.addNode(rid(i), {coord(rng), coord(rng)});
        std::uniform_int_distribution<int> pick(1, n);
        for (int e = 0; e < 3 * n; ++e) {
            int a = pick(rng);
            int b = pick(rng);
            if (a == b) continue;
            g.addEdge(rid(a), rid(b));
        }
        auto from = rid(pick(rng));
        auto to = rid(pick(rng));
        auto got = scn::shortestRoute(g, from, to);
        auto want = bellmanFordCost(g, from, to);
        c.require(got.has_value() == want.has_value(),
                  fmt("trial %d: reachability disagrees with Bellman-Ford", trial));
        if (!got || !want) continue;
        c.require(std::abs(got->cost - *want) <= kRouteCostTolMeters,
                  fmt("trial %d: cost %.12f vs Bellman-Ford %.12f", trial, got->cost,
                      *want));

        // the returned path must really exist and sum to its cost
        double walked = 0.0;
        bool pathOk = true;
        for (std::size_t i = 0; i + 1 < got->waypoints.size(); ++i) {
            bool edgeFound = false;
            for (const auto& edge : g.edgesFrom(got->waypoints[i])) {
                if (edge.target == got->waypoints[i + 1]) {
                    walked += edge.weight;
                    edgeFound = true;
                    break;
                }
            }
            pathOk = pathOk && edgeFound;
        }
        c.require(pathOk && std::abs(walked - got->cost) <= kRouteCostTolMeters,
                  fmt("trial %d: returned path does not walk its cost", trial));
    }

    c.note = fmt("%zu fixture graphs vs exhaustive oracle, 100 Bellman-Ford graphs, "
                 "stable tie-break",
                 fixtures.size());
}

// ---------------------------------------------------------------- 7

void criterion7(Criterion& c) {
    VehicleLimits limits;  // wheelbase 2.65, max steering 0.5
    const double steering = 0.1;
    const double radius = limits.wheelbase / std::tan(steering);
    c.require(std::abs(radius - 26.41) < 0.005,
              fmt("derived circle radius %.4f m is not the documented 26.41 m", radius));

    VehicleState state;
    state.speed = 5.0;
    VehicleCommand command{0.0, steering};
    const double dt = 0.001;
    const Vec2 center{0.0, radius};
    const int steps = static_cast<int>(std::ceil(2.0 * M_PI * radius / (5.0 * dt)));

    double worstRel = 0.0;
    for (int i = 0; i < steps; ++i) {
        state = stepKinematic(state, command, dt, limits);
        worstRel = std::max(worstRel,
                            std::abs(distance(state.position, center) - radius) / radius);
    }
    c.require(worstRel < kCircleRadiusRelTol,
              fmt("circle radius error %.4f%% exceeds 1%%", worstRel * 100.0));

    // straight line: position integrates exactly, heading never drifts
    VehicleState straight;
    straight.speed = 3.0;
    for (int i = 0; i < 1000; ++i) {
        straight = stepKinematic(straight, {0.0, 0.0}, 0.01, limits);
    }
    c.require(std::abs(straight.position.x - 30.0) < kStraightTolMeters &&
                  straight.position.y == 0.0 && straight.heading == 0.0,
              fmt("straight line ended at (%.12f, %.12f)", straight.position.x,
                  straight.position.y));

    c.note = fmt("circle radius error %.4f%% at dt=1 ms (R=%.4f m), straight exact",
                 worstRel * 100.0, radius);
}

// ---------------------------------------------------------------- 8

double effectiveDistance(const ScanReading& reading) { return reading.distance; }

void criterion8(Criterion& c) {
    // analytic wall fixture
    ScannerMount mount;
    mount.fovDeg = 30.0;
    mount.resolutionDeg = 1.0;
    mount.height = 0.5;
    mount.maxRange = 50.0;
    std::vector<Segment> wall{{{10.0, -100.0}, {10.0, 100.0}, 5.0}};
    ScanResult swept = scan(wall, Pose{{0.0, 0.0}, 0.0}, mount);
    c.require(swept.readings.size() == 31, "wall fixture did not produce 31 rays");
    double worst = 0.0;
    for (const auto& reading : swept.readings) {
        double expected = 10.0 / std::cos(reading.angle);
        worst = std::max(worst, std::abs(reading.distance - expected));
        if (!reading.valid) worst = mount.maxRange;
    }
    c.require(worst <= kScanTolMeters,
              fmt("wall fixture worst error %.3e m exceeds 1e-9", worst));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> coord(-30.0, 30.0);
    std::uniform_real_distribution<double> height(0.6, 4.0);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    ScannerMount wide;
    wide.fovDeg = 90.0;
    wide.resolutionDeg = 1.0;
    wide.height = 0.5;
    wide.maxRange = 40.0;

    auto randomScene = [&](int count) {
        std::vector<Segment> segments;
        for (int i = 0; i < count; ++i) {
            segments.push_back({{coord(rng), coord(rng)}, {coord(rng), coord(rng)},
                                height(rng)});
        }
        return segments;
    };

    // occlusion monotonicity: extra obstacles never push a reading out
    for (int trial = 0; trial < 100 && c.failures.empty(); ++trial) {
        auto scene = randomScene(6 + static_cast<int>(rng() % 9));
        Pose pose{{coord(rng) * 0.2, coord(rng) * 0.2}, angle(rng)};
        ScanResult before = scan(scene, pose, wide);
        auto extra = randomScene(1 + static_cast<int>(rng() % 5));
        scene.insert(scene.end(), extra.begin(), extra.end());
        ScanResult after = scan(scene, pose, wide);
        for (std::size_t i = 0; i < before.readings.size(); ++i) {
            const auto& b = before.readings[i];
            const auto& a = after.readings[i];
            if (effectiveDistance(a) > effectiveDistance(b) + 1e-12 ||
                (b.valid && !a.valid)) {
                c.require(false, fmt("occlusion monotonicity broken in trial %d", trial));
                break;
            }
        }
    }

    // rigid-transform equivariance: moving world and scanner together
    // changes nothing
    for (int trial = 0; trial < 100 && c.failures.empty(); ++trial) {
        auto scene = randomScene(6 + static_cast<int>(rng() % 9));
        Pose pose{{coord(rng) * 0.2, coord(rng) * 0.2}, angle(rng)};
        double theta = angle(rng);
        Vec2 shift{coord(rng), coord(rng)};

        std::vector<Segment> moved;
        for (const auto& segment : scene) {
            moved.push_back({rotate(segment.a, theta) + shift,
                             rotate(segment.b, theta) + shift, segment.height});
        }
        Pose movedPose{rotate(pose.position, theta) + shift,
                       normalizeAngle(pose.heading + theta)};

        ScanResult original = scan(scene, pose, wide);
        ScanResult transformed = scan(moved, movedPose, wide);
        for (std::size_t i = 0; i < original.readings.size(); ++i) {
            const auto& a = original.readings[i];
            const auto& b = transformed.readings[i];
            if (a.valid != b.valid ||
                std::abs(a.distance - b.distance) > kScanTolMeters) {
                c.require(false, fmt("equivariance broken in trial %d ray %zu", trial, i));
                break;
            }
        }
    }

    c.note = fmt("wall worst error %.2e m, 100 occlusion scenes, 100 transforms", worst);
}

// ---------------------------------------------------------------- 9

void criterion9(Criterion& c) {
    TempDir dir;
    auto simrun = [&](const std::string& outName, const std::string& extra) {
        fs::path out = dir.path / outName;
        auto result = runCommand(
            tool("simrun") + " --scenario " + fixture("urban_block.scn") +
            " --situation " + fixture("mission.sit") + " --config " + fixture("run.cfg") +
            " --suite " + fixture("suite.cfg") + " --out " + out.string() + extra);
        return std::make_pair(result, out);
    };

    auto [first, outA] = simrun("a", "");
    auto [second, outB] = simrun("b", "");
    c.require(first.exitCode == 0 && second.exitCode == 0,
              fmt("baseline runs exited %d and %d", first.exitCode, second.exitCode));

    std::string recordingA = slurp(outA / "recording.rec");
    std::string recordingB = slurp(outB / "recording.rec");
    c.require(!recordingA.empty(), "first recording is empty");
    c.require(recordingA == recordingB,
              "identical config+seed produced different recordings");
    c.require(slurp(outA / "report.txt") == slurp(outB / "report.txt"),
              "identical config+seed produced different reports");

    auto [reseeded, outC] = simrun("c", " --seed 77");
    c.require(reseeded.exitCode == 0 || reseeded.exitCode == 1,
              fmt("reseeded run exited %d", reseeded.exitCode));
    c.require(slurp(outC / "recording.rec") != recordingA,
              "changing the seed with noise enabled left the recording identical");

    c.note = "two seeded runs byte-identical, reseeded run differs";
}

// ---------------------------------------------------------------- 10

void criterion10(Criterion& c) {
    auto scenarioParse = scn::parseScenario(slurp(fixture("urban_block.scn")));
    auto situationParse = scn::parseSituation(slurp(fixture("mission.sit")));
    if (!scenarioParse.model || !situationParse.model) {
        c.require(false, "fixture files failed to parse");
        return;
    }
    ConfigurationSet master = ConfigurationSet::load(fixture("run.cfg"));
    ConfigurationSet suite = ConfigurationSet::load(fixture("suite.cfg"));

    sim::MissionRunOptions options;
    options.seed = static_cast<std::uint64_t>(master.getInt("global.sim.seed"));

    auto start = std::chrono::steady_clock::now();
    auto mission = sim::buildMissionRun(*scenarioParse.model, *situationParse.model,
                                        master, suite, options);
    sim::RunReport report = mission.runner->run(mission.durationUs);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();

    c.require(!report.abort, "the reference run aborted");
    c.require(report.slices == 6000,
              fmt("expected 6000 slices of 10 ms, ran %llu",
                  static_cast<unsigned long long>(report.slices)));
    c.require(wall < kSpeedBudgetSeconds,
              fmt("60 s of simulated time took %.2f s wall (budget %.1f s)", wall,
                  kSpeedBudgetSeconds));

    c.note = fmt("60 s simulated in %.2f s wall (%.0fx realtime)", wall, 60.0 / wall);
}

// ---------------------------------------------------------------- 11

void criterion11(Criterion& c) {
    TempDir dir;
    fs::path out = dir.path / "pass";
    auto pass = runCommand(tool("simrun") + " --scenario " + fixture("urban_block.scn") +
                           " --situation " + fixture("mission.sit") + " --config " +
                           fixture("run.cfg") + " --suite " + fixture("suite.cfg") +
                           " --out " + out.string());
    c.require(pass.exitCode == 0, fmt("fixture mission exited %d", pass.exitCode));
    auto liveLines = validatorLines(pass.output);
    c.require(liveLines.size() == 3 &&
                  pass.output.find("DestinationReached vehicle=1 PASSED") !=
                      std::string::npos &&
                  pass.output.find("ShortestRouteChosen vehicle=1 PASSED") !=
                      std::string::npos &&
                  pass.output.find("DistanceToRoute vehicle=1 PASSED") !=
                      std::string::npos,
              "fixture mission did not pass all three validators");

    // perturbed threshold: corner cutting must now trip the deviation bound
    std::string tightened = slurp(fixture("suite.cfg"));
    tightened += "\nvalidator.deviation.max = 0.01\n";
    fs::path tightenedCfg = dir.path / "tight.cfg";
    std::ofstream(tightenedCfg) << tightened;
    auto tight = runCommand(tool("simrun") + " --scenario " + fixture("urban_block.scn") +
                            " --situation " + fixture("mission.sit") + " --config " +
                            fixture("run.cfg") + " --suite " + tightenedCfg.string() +
                            " --out " + (dir.path / "tight").string());
    c.require(tight.exitCode == 1,
              fmt("tightened deviation run exited %d, wanted 1", tight.exitCode));
    c.require(tight.output.find("VALIDATOR DistanceToRoute vehicle=1 FAILED") !=
                  std::string::npos,
              "tightened run did not name DistanceToRoute as the failure");

    // wrong branch: route choice is the named failure
    auto wrong = runCommand(tool("simrun") + " --scenario " + fixture("urban_block.scn") +
                            " --situation " + fixture("mission.sit") + " --config " +
                            fixture("run.cfg") + " --suite " +
                            fixture("suite_wrongbranch.cfg") + " --out " +
                            (dir.path / "wrong").string());
    c.require(wrong.exitCode == 1,
              fmt("wrong-branch run exited %d, wanted 1", wrong.exitCode));
    c.require(wrong.output.find("VALIDATOR ShortestRouteChosen vehicle=1 FAILED") !=
                  std::string::npos,
              "wrong-branch run did not name ShortestRouteChosen as the failure");

    // live and offline verdicts agree line for line
    std::string merged = slurp(fixture("run.cfg")) + "\n" + slurp(fixture("suite.cfg"));
    fs::path mergedCfg = dir.path / "merged.cfg";
    std::ofstream(mergedCfg) << merged;
    auto offline = runCommand(tool("validate") + " " + (out / "recording.rec").string() +
                              " " + fixture("urban_block.scn") + " " + mergedCfg.string());
    c.require(offline.exitCode == 0, fmt("validate exited %d", offline.exitCode));
    c.require(validatorLines(offline.output) == liveLines,
              "offline verdict lines differ from the live run");

    c.note = "pass/perturbed/wrong-branch exits 0/1/1 with correct names, live==offline";
}

} // namespace

int main() {
    struct Entry {
        int number;
        void (*run)(Criterion&);
    };
    const Entry entries[] = {
        {1, criterion1}, {2, criterion2}, {3, criterion3},  {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7},  {8, criterion8},
        {9, criterion9}, {10, criterion10}, {11, criterion11},
    };

    int failed = 0;
    for (const auto& entry : entries) {
        Criterion criterion;
        try {
            entry.run(criterion);
        } catch (const std::exception& e) {
            criterion.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        if (criterion.failures.empty()) {
            std::printf("CRITERION %d PASS %s\n", entry.number, criterion.note.c_str());
        } else {
            ++failed;
            std::printf("CRITERION %d FAIL %s\n", entry.number,
                        criterion.failures.front().c_str());
        }
        std::fflush(stdout);
    }
    return failed;
}
