// `diagrams count 4,4` prints the admissible-diagram count (plain integer by
// default). `diagrams enumerate 2,2` lists every diagram's edges as 1-based
// [row, col] vertex labels. `diagrams constrained` restricts to the equal-row,
// upper-to-lower matchings (count m! with m = p*m_p/2).

#include "cli_common.hpp"

#include "chaosmoments/diagrams.hpp"

namespace cli {

namespace {

nlohmann::json edges_json(const chaosmoments::RowLayout& layout,
                          const chaosmoments::Diagram& d) {
    auto factors = chaosmoments::edge_factors(layout, d);
    auto arr = nlohmann::json::array();
    for (const auto& [up, lo] : factors) {
        arr.push_back(nlohmann::json::array(
            {nlohmann::json::array({up.row, up.col}), nlohmann::json::array({lo.row, lo.col})}));
    }
    return arr;
}

struct CountState {
    CommonOpts common;
    std::string sizes_str;
};

int run_count(CountState& st) {
    load_config(st.common);
    auto sizes = parse_sizes(st.sizes_str);
    std::int64_t n = chaosmoments::count_admissible(sizes);
    if (st.common.output == "text") {
        write_out(st.common, std::to_string(n) + "\n");
        return 0;
    }
    nlohmann::json payload = envelope("diagrams count");
    payload["row_sizes"] = sizes;
    payload["count"] = n;
    emit(st.common, payload, "count\n" + std::to_string(n) + "\n");
    return 0;
}

struct EnumState {
    CommonOpts common;
    std::string sizes_str;
};

int run_enumerate(EnumState& st) {
    load_config(st.common);
    auto sizes = parse_sizes(st.sizes_str);
    chaosmoments::RowLayout layout(sizes);
    auto diagrams = chaosmoments::enumerate_admissible(sizes);
    nlohmann::json payload = envelope("diagrams enumerate");
    payload["row_sizes"] = sizes;
    payload["count"] = diagrams.size();
    auto arr = nlohmann::json::array();
    for (const auto& d : diagrams) arr.push_back(edges_json(layout, d));
    payload["diagrams"] = arr;
    emit(st.common, payload, "");
    return 0;
}

struct ConstrainedState {
    CommonOpts common;
    int p = 2;
    int m_p = 1;
    bool count_only = false;
    CLI::Option *p_opt = nullptr, *mp_opt = nullptr;
};

int run_constrained(ConstrainedState& st) {
    load_config(st.common);
    from_config(st.p_opt, st.common, "p", st.p);
    from_config(st.mp_opt, st.common, "mp", st.m_p);
    auto diagrams = chaosmoments::enumerate_constrained(st.p, st.m_p);
    std::vector<int> sizes(st.p, st.m_p);
    chaosmoments::RowLayout layout(sizes);
    nlohmann::json payload = envelope("diagrams constrained");
    payload["p"] = st.p;
    payload["m_p"] = st.m_p;
    payload["m"] = st.p / 2 * st.m_p;
    payload["count"] = diagrams.size();
    if (!st.count_only) {
        auto arr = nlohmann::json::array();
        for (const auto& d : diagrams) arr.push_back(edges_json(layout, d));
        payload["diagrams"] = arr;
    }
    emit(st.common, payload, "count\n" + std::to_string(diagrams.size()) + "\n");
    return 0;
}

}  // namespace

void register_diagrams(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("diagrams",
                                   "admissible pairing diagrams: counts and enumeration");
    cmd->require_subcommand(1);

    {
        auto st = std::make_shared<CountState>();
        auto* c = cmd->add_subcommand("count",
                                      "number of admissible diagrams for the given row sizes");
        c->add_option("sizes", st->sizes_str, "comma-separated row sizes, e.g. 4,4")->required();
        add_common(c, st->common, "text");
        c->callback([st, &action] { action = [st] { return run_count(*st); }; });
    }
    {
        auto st = std::make_shared<EnumState>();
        auto* c = cmd->add_subcommand("enumerate", "list every admissible diagram's edges");
        c->add_option("sizes", st->sizes_str, "comma-separated row sizes, e.g. 2,2")->required();
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_enumerate(*st); }; });
    }
    {
        auto st = std::make_shared<ConstrainedState>();
        auto* c = cmd->add_subcommand(
            "constrained", "equal-row diagrams with all edges from the first p/2 rows to the rest");
        st->p_opt = c->add_option("--p", st->p, "number of rows (even)");
        st->mp_opt = c->add_option("--mp", st->m_p, "vertices per row");
        c->add_flag("--count-only", st->count_only, "omit the diagram list from the output");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_constrained(*st); }; });
    }
}

}  // namespace cli
