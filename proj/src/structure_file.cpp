#include "jdcalc/structure_file.hpp"

#include <algorithm>
#include <sstream>

namespace jdcalc {

namespace {

struct Line {
    int number;
    std::string text;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
    std::size_t h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// key syntax: IDENT or IDENT(slot[,slot...]); slots are variable names or 'e'
struct Key {
    std::string name;
    std::vector<std::string> slots;
};

Key parse_key(const std::string& raw, int line) {
    Key k;
    std::size_t paren = raw.find('(');
    if (paren == std::string::npos) {
        k.name = trim(raw);
        return k;
    }
    k.name = trim(raw.substr(0, paren));
    if (raw.back() != ')') throw parse_error(line, static_cast<int>(raw.size()), "expected ')'");
    std::string inner = raw.substr(paren + 1, raw.size() - paren - 2);
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            k.slots.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    k.slots.push_back(trim(cur));
    for (const auto& s : k.slots)
        if (s.empty()) throw parse_error(line, static_cast<int>(paren) + 1, "empty index slot");
    return k;
}

struct Parser {
    std::vector<Line> lines;
    std::size_t pos = 0;
    StructureFile out;
    bool have_chart = false;

    [[noreturn]] void fail(int line, int col, const std::string& msg) const {
        throw parse_error(line, col, msg);
    }

    int slot_index(const Key& key, std::size_t s, int line, bool allow_e) const {
        const std::string& name = key.slots[s];
        if (name == "e") {
            if (!allow_e) fail(line, 1, "'e' slot is not valid for this key");
            return out.chart.dim();
        }
        auto idx = out.chart.index_of(name);
        if (!idx) fail(line, 1, "undeclared variable '" + name + "'");
        return *idx;
    }

    Poly parse_expr(const std::string& text, int line, int col_offset) const {
        try {
            return parse_poly(out.chart, text);
        } catch (const parse_error& e) {
            throw parse_error(line, col_offset + e.column, e.what());
        }
    }

    // components keyed over a declared chart; e slot allowed when ext = true
    struct ComponentTable {
        std::map<IndexTuple, std::pair<Poly, int>> entries;   // value, line
    };

    void add_component(ComponentTable& table, const Key& key, const Poly& value, int line,
                       int max_arity, bool allow_e) {
        if (static_cast<int>(key.slots.size()) > max_arity)
            fail(line, 1, "too many index slots for '" + key.name + "'");
        IndexTuple idx;
        for (std::size_t s = 0; s < key.slots.size(); ++s) {
            bool last = s + 1 == key.slots.size();
            int v = slot_index(key, s, line, allow_e && last);
            idx.push_back(v);
        }
        IndexTuple sorted = idx;
        int sign = detail::sort_sign(sorted);
        if (sign == 0) fail(line, 1, "repeated index in component tuple");
        if (sorted != idx)
            fail(line, 1, "component tuple must be in increasing chart order"
                          " (write the antisymmetric partner instead)");
        auto it = table.entries.find(idx);
        if (it != table.entries.end())
            fail(line, 1, "duplicate component (also given on line " +
                              std::to_string(it->second.second) + ")");
        table.entries.emplace(idx, std::make_pair(value, line));
    }

    void parse_chart_block(const std::vector<std::pair<Line, std::string>>& kvs) {
        bool seen = false;
        for (const auto& [line, rest] : kvs) {
            Key key = parse_key(line.text.substr(0, line.text.find('=')), line.number);
            if (trim(key.name) != "vars" || !key.slots.empty())
                fail(line.number, 1, "unknown key '" + key.name + "' in [chart]");
            auto names = split_ws(rest);
            if (names.empty()) fail(line.number, 1, "chart needs at least one variable");
            for (const auto& nm : names) {
                if (nm == "e")
                    fail(line.number, 1, "variable name 'e' is reserved for the unit section");
                if (!Chart::valid_identifier(nm))
                    fail(line.number, 1, "invalid variable name '" + nm + "'");
            }
            try {
                out.chart = Chart(names);
            } catch (const input_error& e) {
                fail(line.number, 1, e.what());
            }
            seen = true;
        }
        if (!seen) fail(1, 1, "[chart] must declare vars");
        have_chart = true;
    }

    std::pair<MultiVec, MultiVec> parse_jacobi_entries(
        const std::vector<std::pair<Line, std::string>>& kvs, const Chart& chart) {
        ComponentTable lam_table, e_table;
        for (const auto& [line, rest] : kvs) {
            std::string key_raw = trim(line.text.substr(0, line.text.find('=')));
            Key key = parse_key(key_raw, line.number);
            Poly value = parse_expr(rest, line.number,
                                    static_cast<int>(line.text.find('=')) + 1);
            if (key.name == "lambda") {
                if (key.slots.size() != 2)
                    fail(line.number, 1, "lambda components need two indices");
                Key local = key;
                // indices must name chart variables of the target chart
                IndexTuple idx;
                for (const auto& s : local.slots) {
                    auto i = chart.index_of(s);
                    if (!i) fail(line.number, 1, "undeclared variable '" + s + "'");
                    idx.push_back(*i);
                }
                IndexTuple sorted = idx;
                int sign = detail::sort_sign(sorted);
                if (sign == 0) fail(line.number, 1, "repeated index in component tuple");
                if (sorted != idx)
                    fail(line.number, 1,
                         "component tuple must be in increasing chart order"
                         " (write the antisymmetric partner instead)");
                auto it = lam_table.entries.find(idx);
                if (it != lam_table.entries.end())
                    fail(line.number, 1, "duplicate component (also given on line " +
                                             std::to_string(it->second.second) + ")");
                lam_table.entries.emplace(idx, std::make_pair(value, line.number));
            } else if (key.name == "e") {
                if (key.slots.size() != 1) fail(line.number, 1, "e components need one index");
                auto i = chart.index_of(key.slots[0]);
                if (!i) fail(line.number, 1, "undeclared variable '" + key.slots[0] + "'");
                IndexTuple idx{*i};
                auto it = e_table.entries.find(idx);
                if (it != e_table.entries.end())
                    fail(line.number, 1, "duplicate component (also given on line " +
                                             std::to_string(it->second.second) + ")");
                e_table.entries.emplace(idx, std::make_pair(value, line.number));
            } else {
                fail(line.number, 1, "unknown key '" + key.name + "' in jacobi block");
            }
        }
        MultiVec lam = MultiVec::zero(chart, 2);
        for (const auto& [idx, vc] : lam_table.entries)
            if (!vc.first.is_zero()) lam.set_component(idx, vc.first);
        MultiVec e = MultiVec::zero(chart, 1);
        for (const auto& [idx, vc] : e_table.entries)
            if (!vc.first.is_zero()) e.set_component(idx, vc.first);
        return {lam, e};
    }

    // quotient block expressions are parsed over the sub chart
    std::pair<MultiVec, MultiVec> parse_quotient(
        const std::vector<std::pair<Line, std::string>>& kvs) {
        // first pass: vars
        std::vector<std::pair<Line, std::string>> jac_entries;
        std::optional<Chart> qchart;
        for (const auto& [line, rest] : kvs) {
            std::string key_raw = trim(line.text.substr(0, line.text.find('=')));
            if (key_raw == "vars") {
                auto names = split_ws(rest);
                for (const auto& nm : names) {
                    if (!out.chart.index_of(nm))
                        fail(line.number, 1,
                             "quotient variable '" + nm + "' is not a chart variable");
                }
                try {
                    qchart = Chart(names);
                } catch (const input_error& e) {
                    fail(line.number, 1, e.what());
                }
            } else {
                jac_entries.emplace_back(Line{line.number, line.text}, rest);
            }
        }
        if (!qchart) fail(1, 1, "[quotient] must declare vars");
        out.quotient_chart = *qchart;
        Chart saved = out.chart;
        out.chart = *qchart;   // expressions parse over the sub chart
        auto result = parse_jacobi_entries(jac_entries, *qchart);
        out.chart = saved;
        return result;
    }

    void run(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int num = 0;
        std::string section;
        std::string section_arg;
        std::vector<std::pair<Line, std::string>> pending;
        std::vector<std::tuple<std::string, std::string, std::vector<std::pair<Line, std::string>>>>
            blocks;

        auto flush = [&]() {
            if (!section.empty()) blocks.emplace_back(section, section_arg, pending);
            pending.clear();
        };

        while (std::getline(in, raw)) {
            ++num;
            std::string line = trim(strip_comment(raw));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(num, static_cast<int>(line.size()), "expected ']'");
                flush();
                std::string inner = trim(line.substr(1, line.size() - 2));
                auto parts = split_ws(inner);
                if (parts.empty()) fail(num, 1, "empty section header");
                section = parts[0];
                section_arg = parts.size() > 1 ? parts[1] : "";
                if (parts.size() > 2) fail(num, 1, "unexpected text in section header");
                if (section != "chart" && section != "jacobi" && section != "distribution" &&
                    section != "omega" && section != "submanifold" && section != "quotient")
                    fail(num, 1, "unknown section [" + section + "]");
                if (section == "distribution" && section_arg.empty())
                    fail(num, 1, "[distribution] needs a name");
                if (section != "distribution" && !section_arg.empty())
                    fail(num, 1, "unexpected section argument");
                continue;
            }
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) fail(num, 1, "expected 'key = value'");
            if (section.empty()) fail(num, 1, "content before the first section header");
            pending.emplace_back(Line{num, line}, trim(line.substr(eq + 1)));
        }
        flush();

        // chart first
        bool chart_seen = false;
        for (const auto& [sec, arg, kvs] : blocks) {
            if (sec == "chart") {
                if (chart_seen) fail(1, 1, "duplicate [chart] section");
                parse_chart_block(kvs);
                chart_seen = true;
            }
        }
        if (!chart_seen) throw parse_error(1, 1, "missing [chart]");

        for (const auto& [sec, arg, kvs] : blocks) {
            if (sec == "chart") continue;
            if (sec == "jacobi") {
                if (out.lambda) fail(1, 1, "duplicate [jacobi] section");
                auto [lam, e] = parse_jacobi_entries(kvs, out.chart);
                out.lambda = lam;
                out.e_field = e;
            } else if (sec == "distribution") {
                if (out.distributions.count(arg))
                    fail(1, 1, "duplicate [distribution " + arg + "]");
                out.distributions.emplace(arg, parse_distribution(kvs));
            } else if (sec == "omega") {
                if (out.omega) fail(1, 1, "duplicate [omega] section");
                out.omega = parse_omega(kvs);
            } else if (sec == "submanifold") {
                if (out.submanifold) fail(1, 1, "duplicate [submanifold] section");
                out.submanifold = parse_submanifold(kvs);
            } else if (sec == "quotient") {
                if (out.quotient_chart) fail(1, 1, "duplicate [quotient] section");
                auto [lam, e] = parse_quotient(kvs);
                out.quotient_lambda = lam;
                out.quotient_e = e;
            }
        }
    }

    DistributionBlock parse_distribution(const std::vector<std::pair<Line, std::string>>& kvs) {
        DistributionBlock block;
        // generators in first-appearance order
        std::vector<std::pair<std::string, std::map<int, std::pair<Poly, int>>>> gens;
        auto gen_slot = [&](const std::string& name)
            -> std::map<int, std::pair<Poly, int>>& {
            for (auto& [n, s] : gens)
                if (n == name) return s;
            gens.emplace_back(name, std::map<int, std::pair<Poly, int>>{});
            return gens.back().second;
        };
        for (const auto& [line, rest] : kvs) {
            std::string key_raw = trim(line.text.substr(0, line.text.find('=')));
            Key key = parse_key(key_raw, line.number);
            if (key.slots.empty()) {
                if (key.name == "mode") {
                    if (rest == "aligned")
                        block.mode = DistMode::aligned;
                    else if (rest == "pointwise")
                        block.mode = DistMode::pointwise;
                    else
                        fail(line.number, 1, "mode must be 'aligned' or 'pointwise'");
                } else if (key.name == "samples") {
                    block.samples = std::stoi(rest);
                    if (block.samples <= 0) fail(line.number, 1, "samples must be positive");
                } else if (key.name == "seed") {
                    block.seed = std::stoull(rest);
                } else if (key.name == "grid") {
                    if (rest == "true")
                        block.grid = true;
                    else if (rest == "false")
                        block.grid = false;
                    else
                        fail(line.number, 1, "grid must be 'true' or 'false'");
                } else {
                    fail(line.number, 1, "unknown key '" + key.name + "' in [distribution]");
                }
                continue;
            }
            if (key.slots.size() != 1)
                fail(line.number, 1, "generator components need one index slot");
            int slot = slot_index(key, 0, line.number, true);
            Poly value =
                parse_expr(rest, line.number, static_cast<int>(line.text.find('=')) + 1);
            auto& slots = gen_slot(key.name);
            auto it = slots.find(slot);
            if (it != slots.end())
                fail(line.number, 1, "duplicate component (also given on line " +
                                         std::to_string(it->second.second) + ")");
            slots.emplace(slot, std::make_pair(value, line.number));
        }
        for (const auto& [name, slots] : gens) {
            MultiVec pure = MultiVec::zero(out.chart, 1);
            Poly ep = Poly::zero(out.chart);
            for (const auto& [slot, vc] : slots) {
                if (slot == out.chart.dim())
                    ep = vc.first;
                else if (!vc.first.is_zero())
                    pure.set_component({slot}, vc.first);
            }
            block.generators.push_back(
                ExtVec::from_parts(pure, MultiVec::scalar(out.chart, ep)));
        }
        return block;
    }

    ExtVec parse_omega(const std::vector<std::pair<Line, std::string>>& kvs) {
        ComponentTable table;
        for (const auto& [line, rest] : kvs) {
            std::string key_raw = trim(line.text.substr(0, line.text.find('=')));
            Key key = parse_key(key_raw, line.number);
            if (key.name != "omega")
                fail(line.number, 1, "unknown key '" + key.name + "' in [omega]");
            if (key.slots.size() != 2)
                fail(line.number, 1, "omega components need two indices");
            Poly value =
                parse_expr(rest, line.number, static_cast<int>(line.text.find('=')) + 1);
            add_component(table, key, value, line.number, 2, true);
        }
        MultiVec pure = MultiVec::zero(out.chart, 2);
        MultiVec ep = MultiVec::zero(out.chart, 1);
        for (const auto& [idx, vc] : table.entries) {
            if (vc.first.is_zero()) continue;
            if (idx.back() == out.chart.dim())
                ep.set_component({idx[0]}, vc.first);
            else
                pure.set_component(idx, vc.first);
        }
        return ExtVec::from_parts(pure, ep);
    }

    std::set<int> parse_submanifold(const std::vector<std::pair<Line, std::string>>& kvs) {
        std::set<int> constraints;
        bool seen = false;
        for (const auto& [line, rest] : kvs) {
            std::string key_raw = trim(line.text.substr(0, line.text.find('=')));
            if (key_raw != "constraints")
                fail(line.number, 1, "unknown key '" + key_raw + "' in [submanifold]");
            for (const auto& nm : split_ws(rest)) {
                auto i = out.chart.index_of(nm);
                if (!i) fail(line.number, 1, "undeclared variable '" + nm + "'");
                if (!constraints.insert(*i).second)
                    fail(line.number, 1, "repeated constraint variable '" + nm + "'");
            }
            seen = true;
        }
        if (!seen) fail(1, 1, "[submanifold] must declare constraints");
        return constraints;
    }
};

std::string join_names(const Chart& chart) {
    std::string s;
    for (int i = 0; i < chart.dim(); ++i) {
        if (i) s += " ";
        s += chart.name(i);
    }
    return s;
}

void render_components(std::ostringstream& out, const std::string& key, const Chart& chart,
                       const MultiVec& v, bool e_slot) {
    for (const auto& [t, c] : v.components()) {
        out << key << "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out << ",";
            out << chart.name(t[i]);
        }
        if (e_slot) out << (t.empty() ? "e" : ",e");
        out << ") = " << c.str() << "\n";
    }
}

} // namespace

SubbundleSpec DistributionBlock::to_spec(const Chart& chart) const {
    if (mode == DistMode::aligned) {
        std::vector<int> idx;
        for (const auto& g : generators) {
            if (!g.epart().is_zero())
                throw input_error("aligned distribution generator has a nonzero e-part");
            MultiVec pure = g.pure();
            const auto& comps = pure.components();
            if (comps.size() != 1 || comps.begin()->second != Poly::constant(chart, 1))
                throw input_error(
                    "aligned distribution generator is not a coordinate field; "
                    "use mode = pointwise for polynomial generators");
            idx.push_back(comps.begin()->first[0]);
        }
        return SubbundleSpec::aligned(chart, idx);
    }
    return SubbundleSpec::pointwise(chart, generators, samples, seed, grid);
}

StructureFile parse_structure_file(const std::string& text) {
    Parser p;
    p.run(text);
    return std::move(p.out);
}

std::string render_structure_file(const StructureFile& sf) {
    std::ostringstream out;
    out << "[chart]\nvars = " << join_names(sf.chart) << "\n";
    if (sf.lambda || sf.e_field) {
        out << "\n[jacobi]\n";
        if (sf.lambda) render_components(out, "lambda", sf.chart, *sf.lambda, false);
        if (sf.e_field) render_components(out, "e", sf.chart, *sf.e_field, false);
    }
    for (const auto& [name, block] : sf.distributions) {
        out << "\n[distribution " << name << "]\n";
        out << "mode = " << (block.mode == DistMode::aligned ? "aligned" : "pointwise") << "\n";
        if (block.mode == DistMode::pointwise) {
            out << "samples = " << block.samples << "\n";
            out << "seed = " << block.seed << "\n";
            if (block.grid) out << "grid = true\n";
        }
        int k = 0;
        for (const auto& g : block.generators) {
            std::string gname = "g" + std::to_string(++k);
            render_components(out, gname, sf.chart, g.pure(), false);
            Poly ep = g.epart().component({});
            if (!ep.is_zero()) out << gname << "(e) = " << ep.str() << "\n";
        }
    }
    if (sf.omega) {
        out << "\n[omega]\n";
        render_components(out, "omega", sf.chart, sf.omega->pure(), false);
        render_components(out, "omega", sf.chart, sf.omega->epart(), true);
    }
    if (sf.submanifold) {
        out << "\n[submanifold]\nconstraints =";
        for (int i : *sf.submanifold) out << " " << sf.chart.name(i);
        out << "\n";
    }
    if (sf.quotient_chart) {
        out << "\n[quotient]\nvars = " << join_names(*sf.quotient_chart) << "\n";
        if (sf.quotient_lambda)
            render_components(out, "lambda", *sf.quotient_chart, *sf.quotient_lambda, false);
        if (sf.quotient_e) render_components(out, "e", *sf.quotient_chart, *sf.quotient_e, false);
    }
    return out.str();
}

} // namespace jdcalc
