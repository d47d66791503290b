#include "itpn/report.hpp"

#include <json.hpp>

#include <sstream>

namespace itpn {

namespace {

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n') {
            out += "\\l";
            continue;
        }
        out += c;
    }
    return out;
}

std::string payload_text(const Net& net, const ClassPayload& c)
{
    if (const auto* d = std::get_if<DbmClass>(&c))
        return d->d.str(net);
    if (const auto* e = std::get_if<ExactClass>(&c)) {
        std::vector<std::string> names;
        for (auto v : e->d.variables())
            names.push_back(net.transition_name(static_cast<TransitionId>(v)));
        return e->d.str(names);
    }
    const auto& t = std::get<TdisClass>(c);
    return matrix_rows(net, t.dc) + t.ds.str(net);
}

}  // namespace

std::string matrix_rows(const Net& net, const DbmMatrix& d)
{
    std::ostringstream os;
    for (auto r : d.transitions()) {
        os << net.transition_name(r) << ':';
        bool first = true;
        for (auto c : d.transitions()) {
            os << (first ? " " : ", ") << d.diff(r, c);
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

std::string format_sequence(const Net& net, const std::vector<TransitionId>& seq)
{
    std::string out;
    for (auto t : seq) {
        if (!out.empty())
            out += ',';
        out += net.transition_name(t);
    }
    return out;
}

std::string export_dot(const Net& net, const StateClassGraph& g, DotVerbosity verbosity)
{
    std::ostringstream os;
    os << "digraph \"" << to_string(g.method) << "\" {\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        std::string label = std::to_string(k) + ": " + format_marking(net, g.marking(k)) + "\n";
        if (verbosity == DotVerbosity::full)
            label += payload_text(net, g.nodes[k]);
        os << "  \"n" << k << "\" [label=\"" << escape(label) << "\"];\n";
    }
    for (const auto& e : g.edges)
        os << "  \"n" << e.source << "\" -> \"n" << e.target << "\" [label=\""
           << escape(net.transition_name(e.transition)) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string stats_json(const StateClassGraph& g)
{
    nlohmann::ordered_json j;
    j["method"] = to_string(g.method);
    j["classes"] = g.stats.classes;
    j["edges"] = g.stats.edges;
    j["wall_ms"] = g.stats.wall_ms;
    j["equivalence"] = to_string(g.equivalence);
    j["truncated_classes"] = g.stats.truncated_classes;
    j["truncated_depth"] = g.stats.truncated_depth;
    return j.dump();
}

}  // namespace itpn
