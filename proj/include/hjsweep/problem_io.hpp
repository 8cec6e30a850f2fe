#ifndef HJSWEEP_PROBLEM_IO_HPP
#define HJSWEEP_PROBLEM_IO_HPP

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hjsweep/expr.hpp"
#include "hjsweep/problems.hpp"

namespace hjsweep {

namespace detail {

/// Rectangular raster of samples with bilinear lookup, loaded from CSV:
/// first line "nx,ny,xmin,xmax,ymin,ymax", then ny lines of nx values
/// (row j=0 first).
class Raster {
  public:
    static Raster load_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read raster " + path);
        Raster r;
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("empty raster " + path);
        {
            std::istringstream hdr(line);
            char sep;
            hdr >> r.nx_ >> sep >> r.ny_ >> sep >> r.xmin_ >> sep >> r.xmax_ >> sep >> r.ymin_ >>
                sep >> r.ymax_;
            if (!hdr || r.nx_ < 2 || r.ny_ < 2)
                throw std::runtime_error("bad raster header in " + path);
        }
        r.data_.reserve(static_cast<std::size_t>(r.nx_) * r.ny_);
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string cell;
            while (std::getline(row, cell, ','))
                if (!cell.empty()) r.data_.push_back(std::stod(cell));
        }
        if (static_cast<long>(r.data_.size()) != static_cast<long>(r.nx_) * r.ny_)
            throw std::runtime_error("raster size mismatch in " + path);
        return r;
    }

    double operator()(double x, double y) const {
        const double fx = std::clamp((x - xmin_) / (xmax_ - xmin_) * (nx_ - 1), 0.0, nx_ - 1.0);
        const double fy = std::clamp((y - ymin_) / (ymax_ - ymin_) * (ny_ - 1), 0.0, ny_ - 1.0);
        const int i = std::min(static_cast<int>(fx), nx_ - 2);
        const int j = std::min(static_cast<int>(fy), ny_ - 2);
        const double a = fx - i, b = fy - j;
        auto at = [&](int ii, int jj) { return data_[static_cast<std::size_t>(jj) * nx_ + ii]; };
        return (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) +
               (1 - a) * b * at(i, j + 1) + a * b * at(i + 1, j + 1);
    }

  private:
    int nx_ = 0, ny_ = 0;
    double xmin_ = 0, xmax_ = 1, ymin_ = 0, ymax_ = 1;
    std::vector<double> data_;
};

inline ScalarFn scalar_from_json(const nlohmann::json& j, const std::string& base_dir,
                                 const std::string& what) {
    if (j.is_string()) {
        auto e = std::make_shared<Expr>(Expr::compile(j.get<std::string>()));
        return [e](double x, double y) { return (*e)(x, y); };
    }
    if (j.is_number()) {
        const double v = j.get<double>();
        return [v](double, double) { return v; };
    }
    if (j.is_object() && j.contains("raster")) {
        auto r = std::make_shared<Raster>(Raster::load_csv(base_dir + "/" + j["raster"].get<std::string>()));
        return [r](double x, double y) { return (*r)(x, y); };
    }
    throw std::runtime_error(what + ": expected an expression string, number, or {\"raster\": path}");
}

} // namespace detail

/// Loads a problem from a declarative JSON description. Required keys:
/// name, domain = [xmin,xmax,ymin,ymax], hamiltonian ("eikonal" or
/// {"type":"pwave"|"svwave", a11,a33,a13,a44}), f, exact_phi, and gamma
/// ({"points":[[x,y],...]} and/or {"distance": expr}). Optional:
/// exact_grad = [expr,expr], pinned_boxes = [{cx,cy,half | half_h}],
/// mask = {"inside":[x0,x1,y0,y1], "exclude":[[...],...]}.
inline ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read problem file " + path);
    nlohmann::json j;
    in >> j;
    const std::string base_dir = [&] {
        const auto slash = path.find_last_of('/');
        return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
    }();

    ProblemSpec p;
    p.name = j.at("name").get<std::string>();
    p.summary = j.value("summary", std::string("user-defined problem"));
    const auto dom = j.at("domain");
    p.domain = {dom.at(0).get<double>(), dom.at(1).get<double>(), dom.at(2).get<double>(),
                dom.at(3).get<double>()};

    const auto& ham = j.at("hamiltonian");
    if (ham.is_string() && ham.get<std::string>() == "eikonal") {
        p.hamiltonian.form = HamiltonianForm::GodunovEikonal;
    } else if (ham.is_object()) {
        const std::string type = ham.at("type").get<std::string>();
        AnisoParams ap{ham.at("a11").get<double>(), ham.at("a33").get<double>(),
                       ham.at("a13").get<double>(), ham.at("a44").get<double>()};
        const WaveBranch br = (type == "pwave") ? WaveBranch::QuasiP
                              : (type == "svwave")
                                  ? WaveBranch::QuasiSV
                                  : throw std::runtime_error("hamiltonian.type must be pwave or svwave");
        auto support = std::make_shared<SlownessSupport>(ap, br);
        p.hamiltonian.form = HamiltonianForm::LaxFriedrichs;
        p.hamiltonian.H = support->hamiltonian();
        p.hamiltonian.u_hint = p.hamiltonian.v_hint = 1.2 * support->max_radius();
    } else {
        throw std::runtime_error("hamiltonian: expected \"eikonal\" or a slowness parameter set");
    }

    p.f = detail::scalar_from_json(j.at("f"), base_dir, "f");
    p.pin_phi = detail::scalar_from_json(j.at("exact_phi"), base_dir, "exact_phi");
    p.exact_phi = p.pin_phi;
    if (j.contains("exact_grad")) {
        auto gx = detail::scalar_from_json(j["exact_grad"].at(0), base_dir, "exact_grad[0]");
        auto gy = detail::scalar_from_json(j["exact_grad"].at(1), base_dir, "exact_grad[1]");
        p.exact_grad = [gx, gy](double x, double y) -> std::array<double, 2> {
            return {gx(x, y), gy(x, y)};
        };
        p.pin_grad = p.exact_grad;
    }

    const auto& gamma = j.at("gamma");
    if (gamma.contains("points"))
        for (const auto& pt : gamma["points"])
            p.gamma.points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
    if (gamma.contains("distance")) {
        auto d = detail::scalar_from_json(gamma["distance"], base_dir, "gamma.distance");
        p.gamma.distance = d;
    }
    if (p.gamma.points.empty() && !p.gamma.distance)
        throw std::runtime_error("gamma: needs points and/or a distance expression");

    if (j.contains("pinned_boxes"))
        for (const auto& b : j["pinned_boxes"]) {
            PinnedBox box;
            box.cx = b.at("cx").get<double>();
            box.cy = b.at("cy").get<double>();
            box.half_abs = b.value("half", 0.0);
            box.half_in_h = b.value("half_h", 0.0);
            p.pinned_boxes.push_back(box);
        }

    if (j.contains("mask")) {
        const auto& m = j["mask"];
        Rect inside{-1e300, 1e300, -1e300, 1e300};
        if (m.contains("inside")) {
            const auto& r = m["inside"];
            inside = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>(),
                      r.at(3).get<double>()};
        }
        std::vector<Rect> exclude;
        if (m.contains("exclude"))
            for (const auto& r : m["exclude"])
                exclude.push_back({r.at(0).get<double>(), r.at(1).get<double>(),
                                   r.at(2).get<double>(), r.at(3).get<double>()});
        p.error_mask = [inside, exclude](double x, double y) {
            if (!inside.contains(x, y)) return false;
            for (const auto& r : exclude)
                if (r.contains(x, y)) return false;
            return true;
        };
    }
    return p;
}

} // namespace hjsweep

#endif // HJSWEEP_PROBLEM_IO_HPP
