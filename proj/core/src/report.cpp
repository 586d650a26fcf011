#include "koiso/report.hpp"

#include "koiso/integrals.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace koiso {

using ordered_json = nlohmann::ordered_json;

std::string EtaModeConfig::to_string() const {
    if (!random) return "gamma";
    return "random:" + std::to_string(count);
}

EtaModeConfig EtaModeConfig::parse(const std::string& text) {
    EtaModeConfig mode;
    if (text == "gamma") return mode;
    if (text.rfind("random:", 0) == 0) {
        mode.random = true;
        try {
            mode.count = std::stoi(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("eta mode: cannot parse count in '" + text + "'");
        }
        if (mode.count < 1) throw std::invalid_argument("eta mode: count >= 1 required");
        return mode;
    }
    if (text == "random") {
        mode.random = true;
        return mode;
    }
    throw std::invalid_argument("eta mode: expected 'gamma' or 'random:<k>', got '" + text + "'");
}

void RunConfig::validate() const {
    if (n_list.empty()) throw std::invalid_argument("config: n_list must be nonempty");
    for (int n : n_list)
        if (n < 1) throw std::invalid_argument("config: every n must be >= 1");
    if (partitions < 1) throw std::invalid_argument("config: partitions >= 1 required");
    if (tol_pointwise_rel <= 0 || tol_mc_sigma <= 0 || tol_mc_rel <= 0)
        throw std::invalid_argument("config: tolerances must be positive");
}

CheckConfig RunConfig::check_config() const {
    CheckConfig cc;
    cc.samples = samples;
    cc.seed = seed;
    cc.partitions = partitions;
    cc.mc_sigma = tol_mc_sigma;
    cc.mc_rel = tol_mc_rel;
    cc.pointwise_rel = tol_pointwise_rel;
    cc.eta_random = eta.random;
    cc.eta_seed = seed ^ 0x9E3779B97F4A7C15ull;
    return cc;
}

void RunReport::recompute_summary() {
    summary = RunSummary{};
    for (const CheckReport& c : checks) {
        ++summary.total;
        c.pass ? ++summary.passed : ++summary.failed;
    }
    for (const ObstructionResult& o : obstructions) {
        ++summary.total;
        o.pass ? ++summary.passed : ++summary.failed;
    }
    for (const RemarkCheck& r : remark_checks) {
        ++summary.total;
        r.equal ? ++summary.passed : ++summary.failed;
    }
}

namespace {

ordered_json exact_to_json(const ExactValue& v) {
    return ordered_json{{"coeff", v.coeff_string()}, {"pi_pow", v.pi_power()}};
}

ordered_json value_to_json(const CheckValue& v) {
    if (v.exact) return exact_to_json(*v.exact);
    return ordered_json(v.value);
}

ordered_json config_to_json(const RunConfig& c) {
    ordered_json checks = ordered_json::array();
    if (c.checks.empty()) {
        checks.push_back("all");
    } else {
        for (IdentityId id : c.checks) checks.push_back(std::string(identity_info(id).name));
    }
    return ordered_json{
        {"n_list", c.n_list},
        {"checks", checks},
        {"samples", c.samples},
        {"seed", c.seed},
        {"partitions", c.partitions},
        {"tolerances",
         ordered_json{{"pointwise_rel", c.tol_pointwise_rel},
                      {"mc_sigma", c.tol_mc_sigma},
                      {"mc_rel", c.tol_mc_rel}}},
        {"eta_mode", c.eta.to_string()},
        {"output_format", c.format == OutputFormat::Json ? "json" : "markdown"},
    };
}

ordered_json check_to_json(const CheckReport& c) {
    ordered_json j{
        {"id", std::string(identity_info(c.id).name)},
        {"n", c.n},
        {"method", std::string(method_name(c.method))},
        {"lhs", value_to_json(c.lhs)},
        {"rhs", value_to_json(c.rhs)},
        {"abs_err", c.abs_err},
        {"rel_err", c.rel_err ? ordered_json(*c.rel_err) : ordered_json(nullptr)},
        {"sigma", c.sigma ? ordered_json(*c.sigma) : ordered_json(nullptr)},
        {"pass", c.pass},
    };
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

ordered_json obstruction_to_json(const ObstructionResult& o) {
    auto term = [](double value, const std::optional<ExactValue>& exact) {
        if (exact) return exact_to_json(*exact);
        return ordered_json(value);
    };
    ordered_json j{
        {"n", o.n},
        {"eta", o.eta_label},
        {"method", std::string(method_name(o.method))},
        {"term_cubic", term(o.term_cubic, o.exact_cubic)},
        {"term_outer", term(o.term_outer, o.exact_outer)},
        {"term_crossed", term(o.term_crossed, o.exact_crossed)},
        {"total", term(o.total, o.exact_total)},
        {"closed_total", exact_to_json(o.closed_total)},
        {"sigma_total", o.sigma_total ? ordered_json(*o.sigma_total) : ordered_json(nullptr)},
        {"pass", o.pass},
    };
    if (!o.note.empty()) j["note"] = o.note;
    return j;
}

}  // namespace

std::string to_json_string(const RunReport& report) {
    ordered_json j;
    j["config"] = config_to_json(report.config);
    j["version"] = report.version;
    j["checks"] = ordered_json::array();
    for (const CheckReport& c : report.checks) j["checks"].push_back(check_to_json(c));
    j["obstructions"] = ordered_json::array();
    for (const ObstructionResult& o : report.obstructions)
        j["obstructions"].push_back(obstruction_to_json(o));
    if (!report.remark_checks.empty()) {
        j["remark_crosschecks"] = ordered_json::array();
        for (std::size_t i = 0; i < report.remark_checks.size(); ++i) {
            const RemarkCheck& r = report.remark_checks[i];
            j["remark_crosschecks"].push_back(ordered_json{
                {"n", i < report.remark_n.size() ? report.remark_n[i] : 0},
                {"half_total_coeff", exact_to_json(r.ours)},
                {"classical_coeff", exact_to_json(r.koiso)},
                {"equal", r.equal},
            });
        }
    }
    j["summary"] = ordered_json{{"total", report.summary.total},
                                {"passed", report.summary.passed},
                                {"failed", report.summary.failed}};
    j["wall_time_s"] = report.wall_time_s;
    return j.dump(2) + "\n";
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::string value_text(const CheckValue& v) {
    if (v.exact) return v.exact->to_string();
    return fmt_double(v.value);
}

}  // namespace

std::string to_markdown(const RunReport& report) {
    std::ostringstream os;
    os << "# Verification report (v" << report.version << ")\n\n";
    os << report.config.samples << " samples, seed " << report.config.seed << ", partitions "
       << report.config.partitions << ", eta " << report.config.eta.to_string() << "\n\n";
    if (!report.checks.empty()) {
        os << "## Identity checks\n\n";
        os << "| id | n | method | lhs | rhs | rel err | pass |\n";
        os << "|---|---|---|---|---|---|---|\n";
        for (const CheckReport& c : report.checks) {
            os << "| " << identity_info(c.id).name << " | " << c.n << " | "
               << method_name(c.method) << " | " << value_text(c.lhs) << " | "
               << value_text(c.rhs) << " | "
               << (c.rel_err ? fmt_double(*c.rel_err) : std::string("-")) << " | "
               << (c.pass ? "yes" : "NO") << " |\n";
        }
        os << "\n";
    }
    if (!report.obstructions.empty()) {
        os << "## Obstruction\n\n";
        os << "| n | eta | method | cubic | outer | crossed | total | closed total | pass |\n";
        os << "|---|---|---|---|---|---|---|---|---|\n";
        for (const ObstructionResult& o : report.obstructions) {
            os << "| " << o.n << " | " << o.eta_label << " | " << method_name(o.method) << " | "
               << fmt_double(o.term_cubic) << " | " << fmt_double(o.term_outer) << " | "
               << fmt_double(o.term_crossed) << " | "
               << (o.exact_total ? o.exact_total->to_string() : fmt_double(o.total)) << " | "
               << o.closed_total.to_string() << " | " << (o.pass ? "yes" : "NO") << " |";
            if (!o.note.empty()) os << " " << o.note;
            os << "\n";
        }
        os << "\n";
    }
    if (!report.remark_checks.empty()) {
        os << "## Classical constant cross-check\n\n";
        os << "| n | (1/2) total coeff | classical coeff | equal |\n|---|---|---|---|\n";
        for (std::size_t i = 0; i < report.remark_checks.size(); ++i) {
            const RemarkCheck& r = report.remark_checks[i];
            os << "| " << (i < report.remark_n.size() ? report.remark_n[i] : 0) << " | "
               << r.ours.to_string() << " | " << r.koiso.to_string() << " | "
               << (r.equal ? "yes" : "NO") << " |\n";
        }
        os << "\n";
    }
    os << "Summary: " << report.summary.passed << "/" << report.summary.total << " passed, "
       << report.summary.failed << " failed. Wall time " << fmt_double(report.wall_time_s)
       << " s.\n";
    return os.str();
}

std::vector<ExactValue> exact_values_in_json(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    std::vector<ExactValue> out;
    std::function<void(const ordered_json&)> walk = [&](const ordered_json& node) {
        if (node.is_object()) {
            if (node.contains("coeff") && node.contains("pi_pow") && node["coeff"].is_string()) {
                out.push_back(ExactValue::parse(node["coeff"].get<std::string>(),
                                                node["pi_pow"].get<unsigned>()));
                return;
            }
            for (const auto& [key, value] : node.items()) walk(value);
        } else if (node.is_array()) {
            for (const auto& value : node) walk(value);
        }
    };
    walk(j);
    return out;
}

std::string integrals_table(int n_max) {
    if (n_max < 1) throw std::invalid_argument("integrals_table: n_max >= 1 required");
    std::ostringstream os;
    for (int n = 1; n <= n_max; ++n) {
        os << "n=" << n << "\n";
        for (int r = 0; r <= 3; ++r)
            os << "  I_" << n << "^" << r << " = " << closed_form_I(n, r).to_string() << "\n";
        os << "  Vol(CP^" << n << ") = " << volume_cpn(n).to_string() << "\n";
        os << "  int f_gamma^3 = " << closed_form_f3_integral(n).to_string() << "\n";
    }
    return os.str();
}

}  // namespace koiso
