#include "semsimp/drs_json.hpp"

#include <set>

#include <json.hpp>

#include "semsimp/error.hpp"
#include "semsimp/text.hpp"

namespace semsimp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& field,
                       const std::string& what) {
    throw DataError(msg("DRS-JSON line ", line_no, ", field '", field, "': ", what));
}

const json& require(const json& obj, const char* field, std::size_t line_no) {
    auto it = obj.find(field);
    if (it == obj.end()) fail(line_no, field, "missing");
    return *it;
}

std::vector<std::pair<std::string, int>> parse_word_pos_pairs(
    const json& arr, const char* field, std::size_t line_no) {
    std::vector<std::pair<std::string, int>> out;
    if (!arr.is_array()) fail(line_no, field, "expected an array of [word,pos] pairs");
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
            !item[1].is_number_integer())
            fail(line_no, field, "expected [word, position] pairs");
        out.emplace_back(item[0].get<std::string>(), item[1].get<int>());
    }
    return out;
}

}  // namespace

SemanticGraph parse_drs_record(const std::string& line, std::size_t line_no) {
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::exception& e) {
        throw DataError(msg("DRS-JSON line ", line_no, ": ", e.what()));
    }
    if (!rec.is_object()) fail(line_no, "<record>", "expected a JSON object");

    SemanticGraph g;
    const json& id = require(rec, "id", line_no);
    if (!id.is_string()) fail(line_no, "id", "expected a string");
    g.id = id.get<std::string>();

    const json& tokens = require(rec, "tokens", line_no);
    if (!tokens.is_array()) fail(line_no, "tokens", "expected an array");
    for (const auto& t : tokens) {
        if (!t.is_string()) fail(line_no, "tokens", "expected strings");
        g.tokens.push_back(t.get<std::string>());
    }

    const json& nodes = require(rec, "nodes", line_no);
    if (!nodes.is_array()) fail(line_no, "nodes", "expected an array");
    std::set<std::string> seen_vars;
    for (const auto& jn : nodes) {
        if (!jn.is_object()) fail(line_no, "nodes", "expected objects");
        Node n;
        const json& var = require(jn, "var", line_no);
        if (!var.is_string() || var.get<std::string>().empty())
            fail(line_no, "var", "expected a non-empty string");
        n.var = var.get<std::string>();
        if (!seen_vars.insert(n.var).second)
            fail(line_no, "var", "duplicate node var '" + n.var + "'");

        const json& kind = require(jn, "kind", line_no);
        if (kind == "event")
            n.kind = NodeKind::Event;
        else if (kind == "entity")
            n.kind = NodeKind::Entity;
        else
            fail(line_no, "kind", "expected \"event\" or \"entity\"");

        if (auto it = jn.find("preds"); it != jn.end()) {
            if (!it->is_array()) fail(line_no, "preds", "expected an array");
            for (const auto& jp : *it) {
                Predicate p;
                const json& lemma = require(jp, "lemma", line_no);
                if (!lemma.is_string()) fail(line_no, "lemma", "expected a string");
                p.lemma = lemma.get<std::string>();
                const json& pos = require(jp, "pos", line_no);
                if (!pos.is_array()) fail(line_no, "pos", "expected an array");
                for (const auto& v : pos) {
                    if (!v.is_number_integer())
                        fail(line_no, "pos", "expected integers");
                    int idx = v.get<int>();
                    if (idx < 0 || idx >= static_cast<int>(g.tokens.size()))
                        fail(line_no, "pos",
                             msg("position ", idx, " outside token range [0,",
                                 g.tokens.size(), ")"));
                    p.positions.push_back(idx);
                }
                n.preds.push_back(std::move(p));
            }
        }
        if (auto it = jn.find("named"); it != jn.end())
            n.named = parse_word_pos_pairs(*it, "named", line_no);
        if (auto it = jn.find("timex"); it != jn.end())
            n.timex = parse_word_pos_pairs(*it, "timex", line_no);
        g.nodes.push_back(std::move(n));
    }

    if (auto it = rec.find("edges"); it != rec.end()) {
        if (!it->is_array()) fail(line_no, "edges", "expected an array");
        for (const auto& je : *it) {
            Edge e;
            const json& from = require(je, "from", line_no);
            const json& to = require(je, "to", line_no);
            const json& label = require(je, "label", line_no);
            if (!from.is_string() || !to.is_string() || !label.is_string())
                fail(line_no, "edges", "expected string fields");
            e.from = from.get<std::string>();
            e.to = to.get<std::string>();
            e.label = label.get<std::string>();
            if (!seen_vars.count(e.from))
                fail(line_no, "edges", "unknown endpoint '" + e.from + "'");
            if (!seen_vars.count(e.to))
                fail(line_no, "edges", "unknown endpoint '" + e.to + "'");
            g.edges.push_back(std::move(e));
        }
    }
    return g;
}

std::vector<SemanticGraph> parse_drs_file(const std::string& path) {
    std::vector<SemanticGraph> out;
    std::size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.empty()) continue;
        out.push_back(parse_drs_record(line, line_no));
    }
    return out;
}

std::string serialize_drs_record(const SemanticGraph& g) {
    json rec;
    rec["id"] = g.id;
    rec["tokens"] = g.tokens;
    json nodes = json::array();
    for (const auto& n : g.nodes) {
        json jn;
        jn["var"] = n.var;
        jn["kind"] = n.kind == NodeKind::Event ? "event" : "entity";
        json preds = json::array();
        for (const auto& p : n.preds)
            preds.push_back({{"lemma", p.lemma}, {"pos", p.positions}});
        jn["preds"] = preds;
        if (!n.named.empty()) {
            json named = json::array();
            for (const auto& [w, pos] : n.named) named.push_back({w, pos});
            jn["named"] = named;
        }
        if (!n.timex.empty()) {
            json timex = json::array();
            for (const auto& [v, pos] : n.timex) timex.push_back({v, pos});
            jn["timex"] = timex;
        }
        nodes.push_back(jn);
    }
    rec["nodes"] = nodes;
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    rec["edges"] = edges;
    return rec.dump();
}

}  // namespace semsimp
