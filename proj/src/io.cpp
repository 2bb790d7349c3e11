#include "quasiphase/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "quasiphase/clicks.hpp"
#include "quasiphase/convolution.hpp"
#include "quasiphase/hybrid.hpp"
#include "quasiphase/phasespace.hpp"

namespace quasiphase {

namespace {

Axis parse_axis(const std::string& part) {
    std::istringstream in(part);
    std::string min_s, max_s, count_s;
    if (!std::getline(in, min_s, ':') || !std::getline(in, max_s, ':') ||
        !std::getline(in, count_s))
        throw std::invalid_argument("grid axis must look like min:max:count");
    size_t pos = 0;
    const double lo = std::stod(min_s, &pos);
    if (pos != min_s.size()) throw std::invalid_argument("bad axis minimum: " + min_s);
    const double hi = std::stod(max_s, &pos);
    if (pos != max_s.size()) throw std::invalid_argument("bad axis maximum: " + max_s);
    const int count = std::stoi(count_s, &pos);
    if (pos != count_s.size()) throw std::invalid_argument("bad axis count: " + count_s);
    if (count < 2) throw std::invalid_argument("axis count must be >= 2");
    if (!(lo < hi)) throw std::invalid_argument("axis bounds inverted: " + part);
    return Axis(lo, hi, count);
}

}  // namespace

std::pair<Axis, Axis> parse_grid_spec(const std::string& text) {
    const size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("grid spec must be re_min:re_max:n,im_min:im_max:n");
    return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
}

cplx parse_complex(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty complex literal");
    std::string s = text;
    // strip one trailing 'i'/'j' and find where the imaginary part begins
    bool has_imag_suffix = s.back() == 'i' || s.back() == 'j';
    if (!has_imag_suffix) {
        size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad complex literal: " + text);
        return {re, 0.0};
    }
    s.pop_back();
    if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
    // split at the sign that separates real and imaginary parts (skip
    // exponent signs and the leading sign)
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        size_t pos = 0;
        const double im = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad complex literal: " + text);
        return {0.0, im};
    }
    size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) throw std::invalid_argument("bad complex literal: " + text);
    std::string imag_part = s.substr(split);
    if (imag_part == "+") return {re, 1.0};
    if (imag_part == "-") return {re, -1.0};
    const double im = std::stod(imag_part, &pos);
    if (pos != imag_part.size()) throw std::invalid_argument("bad complex literal: " + text);
    return {re, im};
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string checksum_hex(const std::string& payload) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : payload) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

template <typename T, typename Writer>
std::string grid_csv_impl(const Grid2D<T>& grid, const char* header, Writer write_value) {
    std::string out = header;
    out += '\n';
    for (int iy = 0; iy < grid.im_axis.count; ++iy) {
        for (int ix = 0; ix < grid.re_axis.count; ++ix) {
            out += format_double(grid.re_axis.at(ix));
            out += ',';
            out += format_double(grid.im_axis.at(iy));
            out += ',';
            write_value(out, grid.at(iy, ix));
            out += '\n';
        }
    }
    return out;
}

}  // namespace

std::string grid_to_csv(const RealGrid& grid) {
    return grid_csv_impl(grid, "re_alpha,im_alpha,value",
                         [](std::string& out, double v) { out += format_double(v); });
}

std::string grid_to_csv(const ComplexGrid& grid) {
    return grid_csv_impl(grid, "re_alpha,im_alpha,value,value_im", [](std::string& out, cplx v) {
        out += format_double(v.real());
        out += ',';
        out += format_double(v.imag());
    });
}

ParsedGrid parse_csv_grid(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV payload");
    bool has_imag;
    if (line == "re_alpha,im_alpha,value") has_imag = false;
    else if (line == "re_alpha,im_alpha,value,value_im") has_imag = true;
    else throw std::invalid_argument("unrecognized CSV header: " + line);

    std::vector<double> re_coords, im_coords;
    std::vector<cplx> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double cols[4] = {0, 0, 0, 0};
        int nfields = has_imag ? 4 : 3;
        for (int f = 0; f < nfields; ++f) {
            if (!std::getline(row, field, ',')) throw std::invalid_argument("short CSV row: " + line);
            cols[f] = std::stod(field);
        }
        re_coords.push_back(cols[0]);
        im_coords.push_back(cols[1]);
        values.emplace_back(cols[2], has_imag ? cols[3] : 0.0);
    }
    if (values.empty()) throw std::invalid_argument("CSV payload has no rows");

    // infer axes from the row-major layout: re varies fastest
    int re_count = 1;
    while (re_count < static_cast<int>(re_coords.size()) &&
           std::abs(im_coords[re_count] - im_coords[0]) < 1e-300)
        ++re_count;
    const int im_count = static_cast<int>(values.size()) / re_count;
    if (static_cast<size_t>(re_count) * im_count != values.size())
        throw std::invalid_argument("CSV payload is not a full rectangular grid");

    ParsedGrid parsed;
    parsed.has_imaginary = has_imag;
    parsed.grid =
        ComplexGrid(Axis(re_coords[0], re_coords[re_count - 1], re_count),
                    Axis(im_coords[0], im_coords.back(), im_count));
    parsed.grid.values = std::move(values);
    return parsed;
}

std::string cut_to_csv(bool sweep_im, double fixed_value, const Axis& sweep,
                       const std::function<double(cplx)>& f) {
    std::string out = "re_alpha,im_alpha,value\n";
    for (int i = 0; i < sweep.count; ++i) {
        const double s = sweep.at(i);
        const cplx alpha = sweep_im ? cplx(fixed_value, s) : cplx(s, fixed_value);
        out += format_double(alpha.real());
        out += ',';
        out += format_double(alpha.imag());
        out += ',';
        out += format_double(f(alpha));
        out += '\n';
    }
    return out;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j{{"subcommand", subcommand},
                     {"parameters", parameters},
                     {"grid", grid_spec},
                     {"checksum", checksum},
                     {"tool_version", kToolVersion},
                     {"duration_seconds", duration_seconds}};
    if (seed) j["seed"] = *seed;
    return j;
}

namespace {

template <typename T, typename Writer>
nlohmann::json grid_json_impl(const Grid2D<T>& grid, const RunManifest& manifest,
                              Writer write_value) {
    nlohmann::json values = nlohmann::json::array();
    for (const T& v : grid.values) values.push_back(write_value(v));
    return nlohmann::json{
        {"manifest", manifest.to_json()},
        {"axes",
         {{"re", {{"min", grid.re_axis.min}, {"max", grid.re_axis.max}, {"count", grid.re_axis.count}}},
          {"im",
           {{"min", grid.im_axis.min}, {"max", grid.im_axis.max}, {"count", grid.im_axis.count}}}}},
        {"values", values}};
}

}  // namespace

nlohmann::json grid_to_json(const RealGrid& grid, const RunManifest& manifest) {
    return grid_json_impl(grid, manifest, [](double v) { return nlohmann::json(v); });
}

nlohmann::json grid_to_json(const ComplexGrid& grid, const RunManifest& manifest) {
    return grid_json_impl(grid, manifest,
                          [](cplx v) { return nlohmann::json::array({v.real(), v.imag()}); });
}

RealGrid real_grid_from_json(const nlohmann::json& j) {
    const auto& ax = j.at("axes");
    RealGrid grid(Axis(ax.at("re").at("min"), ax.at("re").at("max"), ax.at("re").at("count")),
                  Axis(ax.at("im").at("min"), ax.at("im").at("max"), ax.at("im").at("count")));
    const auto& values = j.at("values");
    if (values.size() != grid.values.size())
        throw std::invalid_argument("value count does not match axes");
    for (size_t i = 0; i < grid.values.size(); ++i) grid.values[i] = values[i].get<double>();
    return grid;
}

std::string ent_table_to_csv(const EntQuasiTable& table) {
    std::string out = "a\\b";
    for (const char* label : kPauliLabels) {
        out += ',';
        out += label;
    }
    out += '\n';
    for (int i = 0; i < 6; ++i) {
        out += kPauliLabels[i];
        for (int j = 0; j < 6; ++j) {
            out += ',';
            out += format_double(table.values(i, j));
        }
        out += '\n';
    }
    out += "residual," + format_double(table.residual) + '\n';
    return out;
}

nlohmann::json ent_table_to_json(const EntQuasiTable& table, const RunManifest& manifest) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 6; ++j) row.push_back(table.values(i, j));
        rows.push_back(row);
    }
    nlohmann::json labels = nlohmann::json::array();
    for (const char* label : kPauliLabels) labels.push_back(label);
    return nlohmann::json{{"manifest", manifest.to_json()},
                          {"labels", labels},
                          {"values", rows},
                          {"residual", table.residual}};
}

namespace {

struct ValidateCheck {
    const char* name;
    bool ok;
    std::string detail;
};

std::string spats_payload() {
    auto [re, im] = parse_grid_spec("-3:3:101,-3:3:101");
    return grid_to_csv(eval_grid(re, im, [](cplx a) { return spats_p(1.0, a); }));
}

std::string cat_payload() {
    const StateP cat = StateP::from_superposition(CoherentSuperposition::even_cat(1.0));
    const KernelSpec kernel = KernelSpec::sinc2_kernel(3.0);
    auto [re, im] = parse_grid_spec("-4:4:101,-4:4:101");
    return grid_to_csv(eval_grid(re, im, [&](cplx a) { return state_p_regularized(cat, kernel, a); }));
}

std::string clicks_payload() {
    const DetectionConfig cfg = DetectionConfig::balanced(2, 0.5, 1.0 / std::sqrt(2.0), -1.0);
    const CoherentSuperposition cat = CoherentSuperposition::even_cat(1.0);
    return cut_to_csv(true, 0.0, Axis(-5.0, 5.0, 101),
                      [&](cplx a) { return g_state(cat, a, cfg); });
}

std::string mc_payload() {
    const DetectionConfig cfg = DetectionConfig::balanced(2, 0.5, 1.0 / std::sqrt(2.0), -1.0);
    const MonteCarloEstimate est =
        monte_carlo_g(ClassicalState::coherent(1.0), cplx(1.0, 1.0), cfg, 20000, 42);
    return format_double(est.value) + "," + format_double(est.std_error);
}

std::string hybrid_payload() {
    auto [grid, result] = min_eig_grid(1.0, KernelSpec::sinc2_kernel(3.0),
                                       symmetric_axis(4.0, 41), symmetric_axis(4.0, 41));
    return grid_to_csv(grid) + format_double(result.lambda_min);
}

std::string ent_payload() {
    return ent_table_to_csv(ent_quasiprob(TwoQubitState::singlet(), EntSolveMode::min_norm));
}

}  // namespace

int run_validate(std::ostream& log) {
    std::vector<ValidateCheck> checks;

    // oracle-equivalence gates
    {
        const DensityMatrix rho = superposition_density(CoherentSuperposition::even_cat(1.0), 60);
        const StateP cat = StateP::from_superposition(CoherentSuperposition::even_cat(1.0));
        double worst = 0.0;
        for (double x : {-1.0, 0.0, 0.7}) {
            for (double y : {-0.5, 0.0, 1.2}) {
                const cplx a(x, y);
                worst = std::max(worst, std::abs(s_param_state(cat, -1.0, a) - husimi_fock(rho, a)));
            }
        }
        checks.push_back({"husimi-oracle", worst < 1e-10, "max |analytic - fock| = " + format_double(worst)});
    }
    {
        const DetectionConfig cfg = DetectionConfig::balanced(2, 0.5, 1.0 / std::sqrt(2.0), -1.0);
        const CoherentSuperposition cat = CoherentSuperposition::even_cat(1.0);
        const DensityMatrix rho = superposition_density(cat, 80);
        double worst = 0.0;
        for (double x : {-1.0, 0.5}) {
            for (double y : {0.0, 0.8}) {
                const cplx a(x, y);
                worst = std::max(worst, std::abs(g_state(cat, a, cfg) - fock_click_oracle(rho, a, cfg)));
            }
        }
        checks.push_back({"click-oracle", worst < 1e-8, "max |closed - fock| = " + format_double(worst)});
    }
    {
        const KernelSpec kernel = KernelSpec::gaussian_kernel(-1.0);
        auto [re, im] = parse_grid_spec("-6:6:129,-6:6:129");
        RealGrid sampled = eval_grid(re, im, [](cplx a) { return thermal_p(1.0, a); });
        RealGrid smoothed = convolve(sampled, kernel);
        double worst = 0.0;
        for (int iy = 32; iy < 97; ++iy)
            for (int ix = 32; ix < 97; ++ix)
                worst = std::max(worst, std::abs(smoothed.at(iy, ix) -
                                                 thermal_p_gauss(1.0, -1.0, smoothed.point(iy, ix))));
        checks.push_back(
            {"convolution-analytic", worst < 1e-6, "max grid error = " + format_double(worst)});
    }

    // determinism: every payload generated twice, byte compared
    const std::vector<std::pair<const char*, std::string (*)()>> payloads{
        {"spats", spats_payload},   {"cat-p", cat_payload},   {"clicks", clicks_payload},
        {"clicks-mc", mc_payload},  {"hybrid", hybrid_payload}, {"ent-bell", ent_payload}};
    for (const auto& [name, make] : payloads) {
        const std::string first = make();
        const std::string second = make();
        const bool ok = first == second;
        checks.push_back({name, ok, "checksum " + checksum_hex(first) +
                                        (ok ? " reproduced" : " NOT reproduced")});
    }

    bool all_ok = true;
    for (const auto& c : checks) {
        log << (c.ok ? "[PASS] " : "[FAIL] ") << "validate/" << c.name << ": " << c.detail << '\n';
        all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 2;
}

}  // namespace quasiphase
