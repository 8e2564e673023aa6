// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stochwave {
namespace {

struct KeySpec {
    std::string_view canonical;
    std::string_view alias;
};

constexpr std::array kKeys = {
    KeySpec{"domain.dim", "dim"},
    KeySpec{"domain.n_modes", "n_modes"},
    KeySpec{"graph.kind", "graph"},
    KeySpec{"noise.kind", ""},
    KeySpec{"noise.q0", ""},
    KeySpec{"noise.r", ""},
    KeySpec{"noise.rate", ""},
    KeySpec{"noise.sigma", "sigma"},
    KeySpec{"solver.lambda", "lambda"},
    KeySpec{"solver.dt", "dt"},
    KeySpec{"solver.t_final", "t_final"},
    KeySpec{"solver.u0", "u0"},
    KeySpec{"solver.record", "record"},
    KeySpec{"study.n_paths", "n_paths"},
    KeySpec{"study.seed", "seed"},
    KeySpec{"study.lambda_grid", "lambda_grid"},
    KeySpec{"study.eps_grid", "eps_grid"},
    KeySpec{"study.workers", "workers"},
    KeySpec{"study.path", "path"},
    KeySpec{"study.output", "output"},
};

std::string_view trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string_view unquote(std::string_view s)
{
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

double to_double(std::string_view key, std::string_view text)
{
    double value = 0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    return value;
}

std::uint64_t to_uint(std::string_view key, std::string_view text)
{
    std::uint64_t value = 0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError(std::string(key),
                          "expected a nonnegative integer, got '" + std::string(text) + "'");
    return value;
}

}  // namespace

std::string ConfigEntries::canonical(std::string_view section, std::string_view key)
{
    std::string full = section.empty() ? std::string(key)
                                       : std::string(section) + "." + std::string(key);
    for (const auto& spec : kKeys)
    {
        if (spec.canonical == full)
            return full;
        if (section.empty() && !spec.alias.empty() && spec.alias == key)
            return std::string(spec.canonical);
    }
    return {};
}

void ConfigEntries::set(std::string_view key, std::string_view value)
{
    auto dot = key.find('.');
    auto canon = dot == std::string_view::npos ? canonical({}, key)
                                               : canonical(key.substr(0, dot), key.substr(dot + 1));
    if (canon.empty())
        throw ConfigError(std::string(key), "unknown configuration key");
    values_[canon] = std::string(unquote(trim(value)));
}

ConfigEntries parse_config_text(std::string_view text)
{
    ConfigEntries entries;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            auto close = line.find(']');
            if (close == std::string_view::npos)
                throw ConfigError("", "line " + std::to_string(line_no) + ": unterminated section");
            section = std::string(trim(line.substr(1, close - 1)));
            line = trim(line.substr(close + 1));
        }

        // Collapse "key = value" to "key=value" so pairs split on whitespace.
        std::string compact;
        for (std::size_t i = 0; i < line.size(); ++i)
        {
            if (line[i] == '=')
            {
                while (!compact.empty() && (compact.back() == ' ' || compact.back() == '\t'))
                    compact.pop_back();
                compact.push_back('=');
                while (i + 1 < line.size() && (line[i + 1] == ' ' || line[i + 1] == '\t'))
                    ++i;
            }
            else
            {
                compact.push_back(line[i]);
            }
        }

        std::istringstream tokens(compact);
        std::string token;
        while (tokens >> token)
        {
            auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError(token, "line " + std::to_string(line_no)
                                             + ": expected key=value");
            auto key = std::string_view(token).substr(0, eq);
            auto canon = ConfigEntries::canonical(section, key);
            if (canon.empty())
                throw ConfigError(section.empty() ? std::string(key) : section + "." + std::string(key),
                                  "unknown configuration key");
            entries.set(canon, std::string_view(token).substr(eq + 1));
        }
    }
    return entries;
}

ConfigEntries load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<double> parse_number_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    while (!text.empty())
    {
        auto comma = text.find(',');
        out.push_back(to_double(key, text.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        text = text.substr(comma + 1);
    }
    if (out.empty())
        throw ConfigError(std::string(key), "empty list");
    return out;
}

RunConfig build_run_config(const ConfigEntries& entries)
{
    const auto& v = entries.values();
    auto get = [&](const char* key, const char* fallback) -> std::string {
        auto it = v.find(key);
        return it == v.end() ? fallback : it->second;
    };

    RunConfig run;
    std::string current;
    try
    {
        current = "domain.dim";
        auto dim = static_cast<int>(to_uint(current, get("domain.dim", "1")));
        current = "domain.n_modes";
        auto n_modes = to_uint(current, get("domain.n_modes", "64"));
        SpectralGrid grid(dim, n_modes);

        current = "noise.q0";
        double q0 = to_double(current, get("noise.q0", "1"));
        current = "noise.r";
        double r = to_double(current, get("noise.r", "2"));
        auto cov = NuclearCovariance::power_law(grid, q0, r);

        current = "noise.kind";
        auto kind = get("noise.kind", "wiener");
        auto& s = run.solver;
        if (kind == "wiener")
        {
            s.driver = MartingaleDriver::wiener(std::move(cov));
        }
        else if (kind == "poisson")
        {
            current = "noise.rate";
            s.driver = MartingaleDriver::poisson(std::move(cov),
                                                 to_double(current, get("noise.rate", "5")));
        }
        else
        {
            throw ConfigError(current, "expected 'wiener' or 'poisson', got '" + kind + "'");
        }
        s.grid = std::move(grid);

        current = "noise.sigma";
        s.diffusion = DiffusionMap::parse(get("noise.sigma", "clip"));
        current = "graph.kind";
        s.graph = MonotoneGraph::parse(get("graph.kind", "cubic"));
        current = "solver.lambda";
        s.lambda = to_double(current, get("solver.lambda", "1e-2"));
        YosidaScale{s.lambda};
        current = "solver.dt";
        s.dt = to_double(current, get("solver.dt", "1e-3"));
        if (!(s.dt > 0) || !std::isfinite(s.dt))
            throw ConfigError(current, "time step must be positive");
        current = "solver.t_final";
        s.t_final = to_double(current, get("solver.t_final", "1"));
        current = "solver.u0";
        s.initial = InitialData::parse(get("solver.u0", "smooth:8"));
        current = "solver.record";
        s.record = RecordFlags::parse(get("solver.record", "functionals"));

        auto& st = run.study;
        current = "study.seed";
        st.seed = to_uint(current, get("study.seed", "42"));
        s.seed = st.seed;
        current = "study.n_paths";
        st.n_paths = to_uint(current, get("study.n_paths", "200"));
        if (st.n_paths < 1)
            throw ConfigError(current, "need at least one path");
        current = "study.workers";
        st.workers = std::max<std::uint64_t>(1, to_uint(current, get("study.workers", "1")));
        current = "study.path";
        st.path = to_uint(current, get("study.path", "0"));
        current = "study.output";
        st.output_dir = get("study.output", ".");
        current = "study.lambda_grid";
        st.lambda_grid = parse_number_list(current, get("study.lambda_grid", "1e-1,1e-2,1e-3,1e-4"));
        for (double lam : st.lambda_grid)
            YosidaScale{lam};
        current = "study.eps_grid";
        st.eps_grid = parse_number_list(current, get("study.eps_grid", "1e-2,1e-3,0"));
        for (double eps : st.eps_grid)
            if (!(eps >= 0))
                throw ConfigError(current, "smoothing parameters must be nonnegative");

        current = "solver";
        s.validate();
    }
    catch (const ConfigError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw ConfigError(current, e.what());
    }
    return run;
}

}  // namespace stochwave
