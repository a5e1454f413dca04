#include <charconv>
#include <cstdlib>
#include <set>
#include <string>

#include "simkit/scenario.hpp"

namespace simkit::scn {

std::string WaypointId::str() const {
    return std::to_string(layer) + "." + std::to_string(road) + "." +
           std::to_string(lane) + "." + std::to_string(point);
}

std::optional<WaypointId> WaypointId::parse(std::string_view text) {
    WaypointId id;
    int* parts[4] = {&id.layer, &id.road, &id.lane, &id.point};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t end = text.find('.', pos);
        std::string_view part = (i == 3) ? text.substr(pos)
                                         : text.substr(pos, end - pos);
        if (i < 3 && end == std::string_view::npos) return std::nullopt;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), *parts[i]);
        if (ec != std::errc{} || ptr != part.data() + part.size() || *parts[i] < 0) {
            return std::nullopt;
        }
        pos = end + 1;
    }
    return id;
}

const Waypoint* ScenarioModel::findWaypoint(const WaypointId& id) const {
    for (const auto& layer : layers) {
        if (layer.id != id.layer) continue;
        for (const auto& road : layer.roads) {
            if (road.id != id.road) continue;
            for (const auto& lane : road.lanes) {
                if (lane.id != id.lane) continue;
                for (const auto& wp : lane.pointModel) {
                    if (wp.id == id.point) return &wp;
                }
            }
        }
    }
    return nullptr;
}

const SituationObject* SituationModel::findObject(int id) const {
    for (const auto& o : objects) {
        if (o.id == id) return &o;
    }
    return nullptr;
}

namespace {

enum class Tok {
    Keyword,     // ALL-CAPS word
    Identifier,  // lowercase word
    Int,
    Float,
    WaypointId,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Equals,
    Semicolon,
    Comma,
    Arrow,
    End,
    Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;  // Int and Float
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skipBlanksAndComments();
        Token t;
        t.line = line_;
        t.column = column_;
        if (eof()) {
            t.kind = Tok::End;
            return t;
        }
        char c = peek();
        switch (c) {
            case '{': advance(); t.kind = Tok::LBrace; return t;
            case '}': advance(); t.kind = Tok::RBrace; return t;
            case '(': advance(); t.kind = Tok::LParen; return t;
            case ')': advance(); t.kind = Tok::RParen; return t;
            case '=': advance(); t.kind = Tok::Equals; return t;
            case ';': advance(); t.kind = Tok::Semicolon; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case '"': return lexString(t);
            default: break;
        }
        if (c == '-') {
            advance();
            if (!eof() && peek() == '>') {
                advance();
                t.kind = Tok::Arrow;
                return t;
            }
            if (!eof() && isDigit(peek())) return lexNumber(t, true);
            t.kind = Tok::Bad;
            t.text = "-";
            return t;
        }
        if (isDigit(c)) return lexNumber(t, false);
        if (c >= 'A' && c <= 'Z') {
            while (!eof() && peek() >= 'A' && peek() <= 'Z') t.text += take();
            t.kind = Tok::Keyword;
            return t;
        }
        if (c >= 'a' && c <= 'z') {
            while (!eof() && ((peek() >= 'a' && peek() <= 'z') ||
                              (peek() >= '0' && peek() <= '9') || peek() == '_')) {
                t.text += take();
            }
            t.kind = Tok::Identifier;
            return t;
        }
        advance();
        t.kind = Tok::Bad;
        t.text = std::string(1, c);
        return t;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    static bool isDigit(char c) { return c >= '0' && c <= '9'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    char take() {
        char c = text_[pos_];
        advance();
        return c;
    }

    void skipBlanksAndComments() {
        for (;;) {
            while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                              peek() == '\n')) {
                advance();
            }
            if (!eof() && peek() == '/' && pos_ + 1 < text_.size() &&
                text_[pos_ + 1] == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            return;
        }
    }

    Token lexString(Token t) {
        advance();  // opening quote
        while (!eof() && peek() != '"' && peek() != '\n') t.text += take();
        if (eof() || peek() != '"') {
            t.kind = Tok::Bad;
            t.text = "unterminated string";
            return t;
        }
        advance();
        t.kind = Tok::String;
        return t;
    }

    // Greedy digits ("." digits)* scan; dot count picks the token kind.
    Token lexNumber(Token t, bool negative) {
        std::string body;
        int dots = 0;
        while (!eof() && isDigit(peek())) body += take();
        while (!eof() && peek() == '.' && pos_ + 1 < text_.size() &&
               isDigit(text_[pos_ + 1])) {
            ++dots;
            body += take();
            while (!eof() && isDigit(peek())) body += take();
        }
        if (dots == 0) {
            t.kind = Tok::Int;
            t.text = negative ? "-" + body : body;
            t.number = std::strtod(t.text.c_str(), nullptr);
            return t;
        }
        if (dots == 1) {
            t.kind = Tok::Float;
            t.text = negative ? "-" + body : body;
            t.number = std::strtod(t.text.c_str(), nullptr);
            return t;
        }
        if (dots == 3 && !negative) {
            t.kind = Tok::WaypointId;
            t.text = body;
            return t;
        }
        t.kind = Tok::Bad;
        t.text = body;
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

/// Recursive-descent LL(1) parser over the token stream. On a syntax
/// error it records the position, skips to a likely resync point and
/// keeps going, so one pass reports every independent mistake.
class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { bump(); }

    std::vector<ParseError> takeErrors() { return std::move(errors_); }

    ScenarioModel parseScenarioFile() {
        ScenarioModel m;
        expectKeyword("SCENARIO");
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "name") m.header.name = attrString();
                else if (key == "version") m.header.version = attrString();
                else if (key == "date") m.header.date = attrString();
                else if (key == "origin") m.header.origin = attrPoint();
                else unknownAttribute();
            } else if (atKeyword("GROUND")) {
                parseGround(m);
            } else if (atKeyword("LAYER")) {
                m.layers.push_back(parseLayer());
            } else if (atKeyword("ZONE")) {
                m.zones.push_back(parseZone());
            } else {
                fail("expected an attribute, GROUND, LAYER, ZONE or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        expect(Tok::End, "end of file");
        return m;
    }

    SituationModel parseSituationFile() {
        SituationModel m;
        expectKeyword("SITUATION");
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "name") m.header.name = attrString();
                else if (key == "version") m.header.version = attrString();
                else if (key == "scenario") m.header.scenarioRef = attrString();
                else unknownAttribute();
            } else if (atKeyword("OBJECT")) {
                m.objects.push_back(parseObject());
            } else {
                fail("expected an attribute, OBJECT or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        expect(Tok::End, "end of file");
        return m;
    }

private:
    static constexpr std::size_t kMaxErrors = 25;

    /// Flags a repeated attribute name within one block.
    struct AttrGuard {
        explicit AttrGuard(Parser* p) : parser(p) {}
        void check(const std::string& key, const Token& where) {
            if (!seen.insert(key).second) {
                parser->report(where, "duplicate attribute '" + key + "'");
            }
        }
        Parser* parser;
        std::set<std::string> seen;
    };

    // ---- scenario blocks ----

    void parseGround(ScenarioModel& m) {
        bump();  // GROUND
        expect(Tok::LBrace, "{");
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (atKeyword("POLYGON")) m.polygons.push_back(parsePolygon());
            else if (atKeyword("CYLINDER")) m.cylinders.push_back(parseCylinder());
            else fail("expected POLYGON, CYLINDER or '}'");
        }
        expect(Tok::RBrace, "}");
    }

    Polygon parsePolygon() {
        Polygon p;
        bump();  // POLYGON
        p.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                if (key == "height") {
                    seen.check(key, cur_);
                    p.height = attrNumber();
                } else if (key == "vertex") {
                    p.vertices.push_back(attrPoint());  // repeatable
                } else {
                    unknownAttribute();
                }
            } else {
                fail("expected an attribute or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return p;
    }

    Cylinder parseCylinder() {
        Cylinder c;
        bump();  // CYLINDER
        c.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "center") c.center = attrPoint();
                else if (key == "radius") c.radius = attrNumber();
                else if (key == "height") c.height = attrNumber();
                else unknownAttribute();
            } else {
                fail("expected an attribute or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return c;
    }

    Layer parseLayer() {
        Layer layer;
        bump();  // LAYER
        layer.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "height") layer.height = attrNumber();
                else unknownAttribute();
            } else if (atKeyword("ROAD")) {
                layer.roads.push_back(parseRoad());
            } else {
                fail("expected an attribute, ROAD or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return layer;
    }

    Road parseRoad() {
        Road road;
        bump();  // ROAD
        road.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "name") road.name = attrString();
                else unknownAttribute();
            } else if (atKeyword("LANE")) {
                road.lanes.push_back(parseLane());
            } else {
                fail("expected an attribute, LANE or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return road;
    }

    Lane parseLane() {
        Lane lane;
        bump();  // LANE
        lane.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "width") lane.width = attrNumber();
                else if (key == "leftmarking") lane.leftMarking = attrMarking();
                else if (key == "rightmarking") lane.rightMarking = attrMarking();
                else if (key == "speedlimit") lane.speedLimit = attrNumber();
                else unknownAttribute();
            } else if (atKeyword("WAYPOINT")) {
                lane.pointModel.push_back(parseWaypoint());
            } else if (atKeyword("CONNECTOR")) {
                bump();
                Connector c;
                c.source = waypointIdToken();
                expect(Tok::Arrow, "->");
                c.target = waypointIdToken();
                expect(Tok::Semicolon, ";");
                lane.connectors.push_back(c);
            } else if (atKeyword("STOPSIGN")) {
                bump();
                lane.stopSigns.push_back(waypointIdToken());
                expect(Tok::Semicolon, ";");
            } else {
                fail("expected an attribute, WAYPOINT, CONNECTOR, STOPSIGN or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return lane;
    }

    Waypoint parseWaypoint() {
        Waypoint wp;
        bump();  // WAYPOINT
        wp.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "position") wp.position = attrPoint();
                else unknownAttribute();
            } else {
                fail("expected 'position' or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return wp;
    }

    Zone parseZone() {
        Zone zone;
        bump();  // ZONE
        zone.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "name") zone.name = attrString();
                else if (key == "perimeter") zone.perimeter = attrIdList();
                else unknownAttribute();
            } else if (atKeyword("SPOT")) {
                zone.spots.push_back(parseSpot());
            } else {
                fail("expected an attribute, SPOT or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return zone;
    }

    Spot parseSpot() {
        Spot spot;
        bump();  // SPOT
        spot.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "first") spot.first = attrPoint();
                else if (key == "second") spot.second = attrPoint();
                else unknownAttribute();
            } else {
                fail("expected an attribute or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return spot;
    }

    // ---- situation blocks ----

    SituationObject parseObject() {
        SituationObject obj;
        bump();  // OBJECT
        obj.id = blockId();
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "name") obj.name = attrString();
                else unknownAttribute();
            } else if (atKeyword("RECTANGLE")) {
                obj.shape = parseRectangle();
            } else if (atKeyword("BEHAVIOR")) {
                obj.behavior = parseBehavior();
            } else if (atKeyword("START")) {
                obj.start = parseStart();
            } else if (atKeyword("STOP")) {
                obj.stop = parseStop();
            } else {
                fail("expected an attribute, RECTANGLE, BEHAVIOR, START, STOP or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return obj;
    }

    Rectangle parseRectangle() {
        Rectangle r;
        bump();  // RECTANGLE
        expect(Tok::LBrace, "{");
        AttrGuard seen(this);
        while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
            if (at(Tok::Identifier)) {
                std::string key = cur_.text;
                seen.check(key, cur_);
                if (key == "length") r.length = attrNumber();
                else if (key == "width") r.width = attrNumber();
                else unknownAttribute();
            } else {
                fail("expected an attribute or '}'");
            }
        }
        expect(Tok::RBrace, "}");
        return r;
    }

    Behavior parseBehavior() {
        bump();  // BEHAVIOR
        if (atKeyword("EXTERNAL")) {
            bump();
            expect(Tok::Semicolon, ";");
            return ExternalDriver{};
        }
        if (atKeyword("POINTDRIVER")) {
            bump();
            PointDriver d;
            expect(Tok::LBrace, "{");
            AttrGuard seen(this);
            while (!at(Tok::RBrace) && !at(Tok::End) && errors_.size() < kMaxErrors) {
                if (at(Tok::Identifier)) {
                    std::string key = cur_.text;
                    seen.check(key, cur_);
                    if (key == "speed") d.speed = attrNumber();
                    else if (key == "route") d.route = attrIdList();
                    else unknownAttribute();
                } else {
                    fail("expected an attribute or '}'");
                }
            }
            expect(Tok::RBrace, "}");
            return d;
        }
        fail("expected POINTDRIVER or EXTERNAL");
        return ExternalDriver{};
    }

    StartCondition parseStart() {
        bump();  // START
        StartCondition s;
        if (atKeyword("IMMEDIATELY")) {
            bump();
            s.kind = StartKind::Immediately;
        } else if (atKeyword("ONMOVING")) {
            bump();
            s.kind = StartKind::OnMoving;
            s.objectId = intToken();
        } else if (atKeyword("ONENTERINGPOLYGON")) {
            bump();
            s.kind = StartKind::OnEnteringPolygon;
            s.objectId = intToken();
            s.polygonId = intToken();
        } else {
            fail("expected IMMEDIATELY, ONMOVING or ONENTERINGPOLYGON");
            return s;
        }
        expect(Tok::Semicolon, ";");
        return s;
    }

    StopCondition parseStop() {
        bump();  // STOP
        StopCondition s;
        if (atKeyword("ENDOFROUTE")) {
            bump();
            s.kind = StopKind::EndOfRoute;
        } else if (atKeyword("ONREACHINGPOINT")) {
            bump();
            s.kind = StopKind::OnReachingPoint;
            s.point = waypointIdToken();
        } else {
            fail("expected ENDOFROUTE or ONREACHINGPOINT");
            return s;
        }
        expect(Tok::Semicolon, ";");
        return s;
    }

    // ---- token-level helpers ----

    void bump() { cur_ = lexer_.next(); }

    bool at(Tok kind) const { return cur_.kind == kind; }
    bool atKeyword(std::string_view word) const {
        return cur_.kind == Tok::Keyword && cur_.text == word;
    }

    void report(const Token& where, const std::string& message) {
        errors_.push_back(ParseError{where.line, where.column, message});
    }

    /// Records an error at the current token and resyncs: skips ahead
    /// to just past the next ';' or to a '}' / keyword / end, so the
    /// block loop can continue.
    void fail(const std::string& expected) {
        std::string got;
        switch (cur_.kind) {
            case Tok::End: got = "end of file"; break;
            case Tok::Bad: got = "invalid token '" + cur_.text + "'"; break;
            default:
                got = cur_.text.empty() ? std::string("punctuation")
                                        : "'" + cur_.text + "'";
        }
        report(cur_, "expected " + expected + ", got " + got);
        while (!at(Tok::End)) {
            if (at(Tok::Semicolon)) {
                bump();
                return;
            }
            if (at(Tok::RBrace) || at(Tok::Keyword)) return;
            bump();
        }
    }

    void expect(Tok kind, const std::string& what) {
        if (at(kind)) {
            bump();
            return;
        }
        fail("'" + what + "'");
    }

    void expectKeyword(std::string_view word) {
        if (atKeyword(word)) {
            bump();
            return;
        }
        fail("'" + std::string(word) + "'");
    }

    void unknownAttribute() {
        fail("a known attribute name");
    }

    int blockId() {
        if (at(Tok::Int) && cur_.number >= 0) {
            int id = static_cast<int>(cur_.number);
            bump();
            return id;
        }
        fail("a non-negative block id");
        return 0;
    }

    int intToken() {
        if (at(Tok::Int)) {
            int v = static_cast<int>(cur_.number);
            bump();
            return v;
        }
        fail("an integer");
        return 0;
    }

    double numberToken() {
        if (at(Tok::Int) || at(Tok::Float)) {
            double v = cur_.number;
            bump();
            return v;
        }
        fail("a number");
        return 0.0;
    }

    WaypointId waypointIdToken() {
        if (at(Tok::WaypointId)) {
            auto id = WaypointId::parse(cur_.text);
            bump();
            if (id) return *id;
            report(cur_, "malformed waypoint id");
            return WaypointId{};
        }
        fail("a waypoint id (layer.road.lane.point)");
        return WaypointId{};
    }

    // Attribute forms: the caller sits on the attribute name.

    std::string attrString() {
        bump();  // name
        expect(Tok::Equals, "=");
        std::string v;
        if (at(Tok::String)) {
            v = cur_.text;
            bump();
        } else {
            fail("a quoted string");
        }
        expect(Tok::Semicolon, ";");
        return v;
    }

    double attrNumber() {
        bump();
        expect(Tok::Equals, "=");
        double v = numberToken();
        expect(Tok::Semicolon, ";");
        return v;
    }

    Vec2 attrPoint() {
        bump();
        expect(Tok::Equals, "=");
        Vec2 v = pointToken();
        expect(Tok::Semicolon, ";");
        return v;
    }

    Vec2 pointToken() {
        Vec2 v;
        expect(Tok::LParen, "(");
        v.x = numberToken();
        expect(Tok::Comma, ",");
        v.y = numberToken();
        expect(Tok::RParen, ")");
        return v;
    }

    Marking attrMarking() {
        bump();
        expect(Tok::Equals, "=");
        Marking m = Marking::None;
        if (at(Tok::Identifier) &&
            (cur_.text == "solid" || cur_.text == "broken" || cur_.text == "none")) {
            m = cur_.text == "solid"    ? Marking::Solid
                : cur_.text == "broken" ? Marking::Broken
                                        : Marking::None;
            bump();
        } else {
            fail("'solid', 'broken' or 'none'");
        }
        expect(Tok::Semicolon, ";");
        return m;
    }

    std::vector<WaypointId> attrIdList() {
        bump();
        expect(Tok::Equals, "=");
        std::vector<WaypointId> ids;
        ids.push_back(waypointIdToken());
        while (at(Tok::Comma)) {
            bump();
            ids.push_back(waypointIdToken());
        }
        expect(Tok::Semicolon, ";");
        return ids;
    }

    Lexer lexer_;
    Token cur_;
    std::vector<ParseError> errors_;
};

} // namespace

ScenarioParse parseScenario(std::string_view text) {
    Parser parser(text);
    ScenarioModel model = parser.parseScenarioFile();
    ScenarioParse out;
    out.errors = parser.takeErrors();
    if (out.errors.empty()) out.model = std::move(model);
    return out;
}

SituationParse parseSituation(std::string_view text) {
    Parser parser(text);
    SituationModel model = parser.parseSituationFile();
    SituationParse out;
    out.errors = parser.takeErrors();
    if (out.errors.empty()) out.model = std::move(model);
    return out;
}

} // namespace simkit::scn
