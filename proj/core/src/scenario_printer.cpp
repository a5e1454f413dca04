#include <charconv>
#include <string>

#include "simkit/scenario.hpp"

namespace simkit::scn {

namespace {

/// Shortest fixed-notation form that parses back to the same double.
/// Fixed notation because the DSL lexer reads digits('.'digits)* only.
std::string fmt(double v) {
    char buf[384];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

std::string fmt(Vec2 v) {
    return "(" + fmt(v.x) + ", " + fmt(v.y) + ")";
}

std::string_view markingText(Marking m) {
    switch (m) {
        case Marking::Solid: return "solid";
        case Marking::Broken: return "broken";
        case Marking::None: return "none";
    }
    return "none";
}

std::string idListText(const std::vector<WaypointId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += ids[i].str();
    }
    return out;
}

class Printer {
public:
    std::string take() { return std::move(out_); }

    void scenario(const ScenarioModel& m) {
        line("SCENARIO {");
        indent();
        attr("name", quoted(m.header.name));
        attr("version", quoted(m.header.version));
        attr("date", quoted(m.header.date));
        if (m.header.origin) attr("origin", fmt(*m.header.origin));
        if (!m.polygons.empty() || !m.cylinders.empty()) {
            line("GROUND {");
            indent();
            for (const auto& p : m.polygons) polygon(p);
            for (const auto& c : m.cylinders) cylinder(c);
            dedent();
            line("}");
        }
        for (const auto& l : m.layers) layer(l);
        for (const auto& z : m.zones) zone(z);
        dedent();
        line("}");
    }

    void situation(const SituationModel& m) {
        line("SITUATION {");
        indent();
        attr("name", quoted(m.header.name));
        attr("version", quoted(m.header.version));
        attr("scenario", quoted(m.header.scenarioRef));
        for (const auto& o : m.objects) object(o);
        dedent();
        line("}");
    }

private:
    void polygon(const Polygon& p) {
        line("POLYGON " + std::to_string(p.id) + " {");
        indent();
        attr("height", fmt(p.height));
        for (const auto& v : p.vertices) attr("vertex", fmt(v));
        dedent();
        line("}");
    }

    void cylinder(const Cylinder& c) {
        line("CYLINDER " + std::to_string(c.id) + " {");
        indent();
        attr("center", fmt(c.center));
        attr("radius", fmt(c.radius));
        attr("height", fmt(c.height));
        dedent();
        line("}");
    }

    void layer(const Layer& l) {
        line("LAYER " + std::to_string(l.id) + " {");
        indent();
        attr("height", fmt(l.height));
        for (const auto& r : l.roads) road(r);
        dedent();
        line("}");
    }

    void road(const Road& r) {
        line("ROAD " + std::to_string(r.id) + " {");
        indent();
        attr("name", quoted(r.name));
        for (const auto& l : r.lanes) lane(l);
        dedent();
        line("}");
    }

    void lane(const Lane& l) {
        line("LANE " + std::to_string(l.id) + " {");
        indent();
        attr("width", fmt(l.width));
        attr("leftmarking", std::string(markingText(l.leftMarking)));
        attr("rightmarking", std::string(markingText(l.rightMarking)));
        if (l.speedLimit) attr("speedlimit", fmt(*l.speedLimit));
        for (const auto& wp : l.pointModel) {
            line("WAYPOINT " + std::to_string(wp.id) + " { position = " +
                 fmt(wp.position) + "; }");
        }
        for (const auto& c : l.connectors) {
            line("CONNECTOR " + c.source.str() + " -> " + c.target.str() + ";");
        }
        for (const auto& s : l.stopSigns) {
            line("STOPSIGN " + s.str() + ";");
        }
        dedent();
        line("}");
    }

    void zone(const Zone& z) {
        line("ZONE " + std::to_string(z.id) + " {");
        indent();
        attr("name", quoted(z.name));
        if (!z.perimeter.empty()) attr("perimeter", idListText(z.perimeter));
        for (const auto& s : z.spots) spot(s);
        dedent();
        line("}");
    }

    void spot(const Spot& s) {
        line("SPOT " + std::to_string(s.id) + " {");
        indent();
        attr("first", fmt(s.first));
        attr("second", fmt(s.second));
        dedent();
        line("}");
    }

    void object(const SituationObject& o) {
        line("OBJECT " + std::to_string(o.id) + " {");
        indent();
        attr("name", quoted(o.name));
        line("RECTANGLE { length = " + fmt(o.shape.length) + "; width = " +
             fmt(o.shape.width) + "; }");
        if (const auto* d = std::get_if<PointDriver>(&o.behavior)) {
            line("BEHAVIOR POINTDRIVER {");
            indent();
            attr("speed", fmt(d->speed));
            if (!d->route.empty()) attr("route", idListText(d->route));
            dedent();
            line("}");
        } else {
            line("BEHAVIOR EXTERNAL;");
        }
        switch (o.start.kind) {
            case StartKind::Immediately:
                line("START IMMEDIATELY;");
                break;
            case StartKind::OnMoving:
                line("START ONMOVING " + std::to_string(o.start.objectId) + ";");
                break;
            case StartKind::OnEnteringPolygon:
                line("START ONENTERINGPOLYGON " + std::to_string(o.start.objectId) +
                     " " + std::to_string(o.start.polygonId) + ";");
                break;
        }
        if (o.stop.kind == StopKind::EndOfRoute) {
            line("STOP ENDOFROUTE;");
        } else {
            line("STOP ONREACHINGPOINT " + o.stop.point.str() + ";");
        }
        dedent();
        line("}");
    }

    static std::string quoted(const std::string& s) { return "\"" + s + "\""; }

    void attr(const std::string& key, const std::string& value) {
        line(key + " = " + value + ";");
    }

    void line(const std::string& text) {
        out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
        out_ += text;
        out_ += '\n';
    }

    void indent() { ++depth_; }
    void dedent() { --depth_; }

    std::string out_;
    int depth_ = 0;
};

} // namespace

std::string print(const ScenarioModel& model) {
    Printer p;
    p.scenario(model);
    return p.take();
}

std::string print(const SituationModel& model) {
    Printer p;
    p.situation(model);
    return p.take();
}

} // namespace simkit::scn
