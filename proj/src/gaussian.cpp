#include "gsn/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gsn/kernels.hpp"

namespace gsn {

GaussianSum::GaussianSum(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("GaussianSum: dimension must be positive");
}

void GaussianSum::push_back(const GaussianTerm& t) {
    if (static_cast<int>(t.center.size()) != dim_)
        throw std::invalid_argument("GaussianSum: term dimension mismatch");
    if (!(t.sigma > 0.0)) throw std::invalid_argument("GaussianSum: sigma must be positive");
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.sigma))
        throw std::invalid_argument("GaussianSum: non-finite term");
    for (double c : t.center)
        if (!std::isfinite(c)) throw std::invalid_argument("GaussianSum: non-finite center");

    amp_.push_back(t.amplitude);
    sigma_.push_back(t.sigma);
    inv_sigma_sq_.push_back(1.0 / (t.sigma * t.sigma));
    centers_.insert(centers_.end(), t.center.begin(), t.center.end());
}

void GaussianSum::append(const GaussianSum& other, double amplitude_scale) {
    if (other.dim_ != dim_) throw std::invalid_argument("GaussianSum: dimension mismatch");
    for (double a : other.amp_) amp_.push_back(a * amplitude_scale);
    sigma_.insert(sigma_.end(), other.sigma_.begin(), other.sigma_.end());
    inv_sigma_sq_.insert(inv_sigma_sq_.end(), other.inv_sigma_sq_.begin(), other.inv_sigma_sq_.end());
    centers_.insert(centers_.end(), other.centers_.begin(), other.centers_.end());
}

GaussianTerm GaussianSum::term(std::size_t j) const {
    auto c = center(j);
    return {amp_[j], std::vector<double>(c.begin(), c.end()), sigma_[j]};
}

double GaussianSum::operator()(std::span<const double> x) const {
    double out = 0.0;
    eval_batch(x, {&out, 1});
    return out;
}

void GaussianSum::eval_batch(std::span<const double> pts, std::span<double> out) const {
    const auto d = static_cast<std::size_t>(dim_);
    if (pts.size() != out.size() * d)
        throw std::invalid_argument("GaussianSum: point buffer does not match dimension");
    std::fill(out.begin(), out.end(), 0.0);
    if (amp_.empty()) return;
    kernels::active().gauss_accumulate(d, amp_.size(), amp_.data(), centers_.data(),
                                       inv_sigma_sq_.data(), out.size(), pts.data(), out.data());
}

std::string GaussianSum::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = dim_;
    j["terms"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < size(); ++t) {
        nlohmann::ordered_json jt;
        jt["A"] = amp_[t];
        auto c = center(t);
        jt["c"] = std::vector<double>(c.begin(), c.end());
        jt["sigma"] = sigma_[t];
        j["terms"].push_back(std::move(jt));
    }
    return j.dump();
}

GaussianSum GaussianSum::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    GaussianSum s(j.at("d").get<int>());
    for (const auto& jt : j.at("terms")) {
        GaussianTerm t;
        t.amplitude = jt.at("A").get<double>();
        t.center = jt.at("c").get<std::vector<double>>();
        t.sigma = jt.at("sigma").get<double>();
        s.push_back(t);
    }
    return s;
}

double CubeFrame::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= side;
    return v;
}

double gaussian_fourier(int dim, double sigma, std::span<const double> xi) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_fourier: sigma must be positive");
    if (static_cast<int>(xi.size()) != dim)
        throw std::invalid_argument("gaussian_fourier: xi dimension mismatch");
    double norm2 = 0.0;
    for (double x : xi) norm2 += x * x;
    const double front = std::pow(sigma * std::sqrt(M_PI), dim);
    return front * std::exp(-sigma * sigma * norm2 / 4.0);
}

std::vector<double> affine_pullback_point(std::span<const double> x, const CubeFrame& frame) {
    if (static_cast<int>(x.size()) != frame.dim())
        throw std::invalid_argument("affine_pullback_point: dimension mismatch");
    std::vector<double> y(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) y[a] = (x[a] - frame.corner[a]) / frame.side;
    return y;
}

GaussianSum map_sum_to_cube(const GaussianSum& s, const CubeFrame& frame) {
    if (frame.dim() != s.dim()) throw std::invalid_argument("map_sum_to_cube: dimension mismatch");
    if (!(frame.side > 0.0)) throw std::invalid_argument("map_sum_to_cube: sidelength must be positive");
    GaussianSum out(s.dim());
    GaussianTerm t;
    t.center.resize(s.dim());
    for (std::size_t j = 0; j < s.size(); ++j) {
        t.amplitude = s.amplitude(j);
        t.sigma = frame.side * s.sigma(j);
        auto c = s.center(j);
        for (int a = 0; a < s.dim(); ++a) t.center[a] = frame.corner[a] + frame.side * c[a];
        out.push_back(t);
    }
    return out;
}

} // namespace gsn
