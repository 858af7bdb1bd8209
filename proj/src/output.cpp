#include "nsch/output.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace nsch {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping is not implemented");

namespace {

std::string index_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d", index);
    return buf;
}

void write_raw_f64(const std::filesystem::path& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

} // namespace

void ensure_writable(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("output directory " + dir.string() +
                                 " cannot be created: " + ec.message());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe, std::ios::trunc);
        if (!out)
            throw std::runtime_error("output directory " + dir.string() + " is not writable");
        out << "ok";
    }
    std::filesystem::remove(probe, ec);
}

void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<StepRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "step,time,energy,mass,div_resid,max_abs_phi,picard_iters,contraction_ratio,"
           "window_T\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.step << ',' << r.time << ',' << r.energy << ',' << r.mass << ',' << r.div_resid
            << ',' << r.max_abs_phi << ',' << r.picard_iters << ',' << r.contraction_ratio << ','
            << r.window_T << '\n';
    }
    if (!out) throw std::runtime_error("short write to " + path.string());
}

void write_snapshot(const std::filesystem::path& dir, int index, const ScalarField& phi,
                    const VectorField& v, double time) {
    const std::string tag = index_name(index);
    write_raw_f64(dir / ("phi_" + tag + ".f64"), phi.values());
    write_raw_f64(dir / ("vx_" + tag + ".f64"), v.x().values());
    write_raw_f64(dir / ("vy_" + tag + ".f64"), v.y().values());
    nlohmann::json meta{{"nx", phi.grid().nx()},
                        {"ny", phi.grid().ny()},
                        {"lx", phi.grid().lx()},
                        {"ly", phi.grid().ly()},
                        {"time", time}};
    std::ofstream out(dir / (tag + ".meta.json"), std::ios::trunc);
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write snapshot metadata " + tag);
}

std::vector<double> read_raw_f64(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    std::vector<double> out(bytes / sizeof(double));
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error("short read from " + path.string());
    return out;
}

void write_report_json(const std::filesystem::path& path,
                       const std::vector<WindowSummary>& windows, const NormReport& norms,
                       const std::string& extra_json) {
    nlohmann::json j;
    j["windows"] = nlohmann::json::array();
    for (const auto& w : windows) {
        j["windows"].push_back({{"t_start", w.t_start},
                                {"window_T", w.window_T},
                                {"iterates", w.picard.iterates},
                                {"update_norms", w.picard.update_norms},
                                {"contraction_ratios", w.picard.contraction_ratios},
                                {"converged", w.picard.converged},
                                {"final_residual", w.picard.final_residual},
                                {"v_norm", w.v_norm},
                                {"phi_norm", w.phi_norm},
                                {"y1_norm", w.y1_norm},
                                {"y2_norm", w.y2_norm}});
    }
    j["norms"] = {{"v_norm", norms.v_norm},
                  {"phi_norm", norms.phi_norm},
                  {"y1_norm", norms.y1_norm},
                  {"y2_norm", norms.y2_norm},
                  {"energy_series", norms.energy_series},
                  {"mass_series", norms.mass_series},
                  {"div_residual_series", norms.div_residual_series},
                  {"max_abs_phi_series", norms.max_abs_phi_series}};
    if (!extra_json.empty()) j["extra"] = nlohmann::json::parse(extra_json);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

void write_error_json(const std::filesystem::path& dir, const std::string& message,
                      const std::string& where) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nlohmann::json j{{"error", message}, {"where", where}};
    std::ofstream out(dir / "error.json", std::ios::trunc);
    if (out) out << j.dump(2) << '\n';
}

} // namespace nsch
