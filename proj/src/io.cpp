#include "ptring/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptring::io {

using nlohmann::json;

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "index,re,im\n";
    for (int i = 0; i < s.size(); ++i)
        os << (i + 1) << ',' << fmt12(s.eigenvalues[i].real()) << ','
           << fmt12(s.eigenvalues[i].imag()) << '\n';
    return os.str();
}

std::string ring_chain_csv(const std::vector<double>& diff) {
    std::ostringstream os;
    os << "index,delta_e\n";
    for (std::size_t i = 0; i < diff.size(); ++i)
        os << (i + 1) << ',' << fmt12(diff[i]) << '\n';
    return os.str();
}

std::string phase_csv(const std::vector<PhaseDiagram>& diagrams) {
    std::ostringstream os;
    os << "alpha,n_sites,lambda,m,mu,gamma_pt,gamma_pt_over_delta,bracket_width,status\n";
    for (const auto& d : diagrams) {
        for (const auto& p : d.points) {
            std::string status = to_string(p.status);
            if (!p.single_flip) status += ";multi_flip";
            os << fmt12(d.alpha) << ',' << d.n_sites << ',' << fmt12(p.lambda_ring) << ','
               << p.gain_site << ',' << fmt12(p.mu) << ',' << fmt12(p.gamma_pt) << ','
               << fmt12(p.gamma_pt_normalized) << ',' << fmt12(p.bracket_width) << ','
               << status << '\n';
        }
    }
    return os.str();
}

std::string chirality_csv(const ChiralityCurve& curve, double gamma_pt) {
    std::ostringstream os;
    os << "gamma,gamma_over_gamma_pt,momentum,window,flag\n";
    for (std::size_t i = 0; i < curve.gamma_values.size(); ++i) {
        const double g = curve.gamma_values[i];
        const double ratio = gamma_pt > 0.0 ? g / gamma_pt : 0.0;
        os << fmt12(g) << ',' << fmt12(ratio) << ',' << fmt12(curve.momentum_values[i])
           << ',' << fmt12(curve.windows[i]) << ',' << curve.flags[i] << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const std::vector<WaveState>& samples) {
    std::ostringstream os;
    os << "t,site,re_f,im_f,intensity\n";
    for (const auto& s : samples) {
        for (int j = 0; j < s.amplitudes.size(); ++j) {
            const Complex f = s.amplitudes[j];
            os << fmt12(s.time) << ',' << (j + 1) << ',' << fmt12(f.real()) << ','
               << fmt12(f.imag()) << ',' << fmt12(std::norm(f)) << '\n';
        }
    }
    return os.str();
}

json spectrum_json(const Spectrum& s) {
    json rows = json::array();
    for (int i = 0; i < s.size(); ++i)
        rows.push_back({{"index", i + 1},
                        {"re", s.eigenvalues[i].real()},
                        {"im", s.eigenvalues[i].imag()}});
    return {{"eigenvalues", rows}, {"max_imag", s.max_imag}};
}

json ring_chain_json(const std::vector<double>& diff) {
    json rows = json::array();
    for (std::size_t i = 0; i < diff.size(); ++i)
        rows.push_back({{"index", i + 1}, {"delta_e", diff[i]}});
    return {{"differences", rows}};
}

namespace {
double round6(double x) {
    return std::stod(fmt6(x));
}
}  // namespace

json phase_json(const std::vector<PhaseDiagram>& diagrams) {
    json out = json::array();
    for (const auto& d : diagrams) {
        json points = json::array();
        for (const auto& p : d.points) {
            points.push_back({{"m", p.gain_site},
                              {"mu", p.mu},
                              {"mu_rounded6", round6(p.mu)},
                              {"gamma_pt", p.gamma_pt},
                              {"gamma_pt_over_delta", p.gamma_pt_normalized},
                              {"gamma_pt_over_delta_rounded6", round6(p.gamma_pt_normalized)},
                              {"bracket_width", p.bracket_width},
                              {"status", to_string(p.status)},
                              {"single_flip", p.single_flip},
                              {"note", p.note}});
        }
        out.push_back({{"alpha", d.alpha},
                       {"n_sites", d.n_sites},
                       {"lambda", d.lambda_ring},
                       {"points", points}});
    }
    return out;
}

json chirality_json(const ChiralityCurve& curve, double gamma_pt) {
    json rows = json::array();
    for (std::size_t i = 0; i < curve.gamma_values.size(); ++i) {
        const double g = curve.gamma_values[i];
        const double ratio = gamma_pt > 0.0 ? g / gamma_pt : 0.0;
        rows.push_back({{"gamma", g},
                        {"gamma_over_gamma_pt", ratio},
                        {"gamma_over_gamma_pt_rounded6", round6(ratio)},
                        {"momentum", curve.momentum_values[i]},
                        {"momentum_rounded6", round6(curve.momentum_values[i])},
                        {"window", curve.windows[i]},
                        {"flag", curve.flags[i]}});
    }
    return {{"m0", curve.m0},
            {"gain_site", curve.gain_site},
            {"averaging_window", curve.averaging_window},
            {"points", rows}};
}

json trajectory_json(const std::vector<WaveState>& samples) {
    json rows = json::array();
    for (const auto& s : samples) {
        json amps = json::array();
        for (int j = 0; j < s.amplitudes.size(); ++j)
            amps.push_back({{"site", j + 1},
                            {"re_f", s.amplitudes[j].real()},
                            {"im_f", s.amplitudes[j].imag()},
                            {"intensity", std::norm(s.amplitudes[j])}});
        rows.push_back({{"t", s.time}, {"amplitudes", amps}});
    }
    return {{"samples", rows}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path partial = path.string() + ".partial";
    {
        std::ofstream out(partial, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + partial.string());
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("write failed: " + partial.string());
    }
    std::filesystem::rename(partial, path);
}

std::map<std::string, std::string> parse_flat_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto sep = line.find('=');
        if (sep == std::string::npos) sep = line.find_first_of(" \t");
        if (sep == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = strip(line.substr(0, sep));
        const std::string value = strip(line.substr(sep + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        if (!kv.emplace(key, value).second)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
    }
    return kv;
}

}  // namespace ptring::io
