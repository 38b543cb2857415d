#include "pwl/trig_series.hpp"

#include "pwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pwl {

void TrigPolySeries::add(int r_power, int harmonic, double cos_coeff, double sin_coeff) {
    if (r_power < -1) throw DomainError("r power below -1 not supported");
    if (harmonic < 0) throw DomainError("negative harmonic");
    if (harmonic == 0) sin_coeff = 0.0;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{r_power, harmonic}, [](const TrigTerm& t, const auto& key) {
        return std::pair{t.r_power, t.harmonic} < key;
    });
    if (it != terms_.end() && it->r_power == r_power && it->harmonic == harmonic) {
        it->cos_coeff += cos_coeff;
        it->sin_coeff += sin_coeff;
        if (it->cos_coeff == 0.0 && it->sin_coeff == 0.0) terms_.erase(it);
        return;
    }
    if (cos_coeff == 0.0 && sin_coeff == 0.0) return;
    terms_.insert(it, TrigTerm{r_power, harmonic, cos_coeff, sin_coeff});
}

double TrigPolySeries::evaluate(double theta, double r) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        if (t.r_power < 0 && r <= 0.0) throw DomainError("series with a 1/r term evaluated at r <= 0");
        const double weight = std::pow(r, t.r_power);
        sum += weight * (t.cos_coeff * std::cos(t.harmonic * theta) + t.sin_coeff * std::sin(t.harmonic * theta));
    }
    return sum;
}

double TrigPolySeries::derivative_r(double theta, double r) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        if (t.r_power == 0) continue;
        if (t.r_power < 0 && r <= 0.0) throw DomainError("series with a 1/r term differentiated at r <= 0");
        const double weight = t.r_power * std::pow(r, t.r_power - 1);
        sum += weight * (t.cos_coeff * std::cos(t.harmonic * theta) + t.sin_coeff * std::sin(t.harmonic * theta));
    }
    return sum;
}

const TrigTerm* TrigPolySeries::find(int r_power, int harmonic) const {
    for (const auto& t : terms_)
        if (t.r_power == r_power && t.harmonic == harmonic) return &t;
    return nullptr;
}

double TrigPolySeries::cos_coeff(int r_power, int harmonic) const {
    const TrigTerm* t = find(r_power, harmonic);
    return t ? t->cos_coeff : 0.0;
}

double TrigPolySeries::sin_coeff(int r_power, int harmonic) const {
    const TrigTerm* t = find(r_power, harmonic);
    return t ? t->sin_coeff : 0.0;
}

TrigPolySeries& TrigPolySeries::operator+=(const TrigPolySeries& rhs) {
    for (const auto& t : rhs.terms_) add(t.r_power, t.harmonic, t.cos_coeff, t.sin_coeff);
    return *this;
}

std::string TrigPolySeries::to_table() const {
    std::ostringstream os;
    os.precision(17);
    os << "r_power\tharmonic\tcos\tsin\n";
    for (const auto& t : terms_) os << t.r_power << '\t' << t.harmonic << '\t' << t.cos_coeff << '\t' << t.sin_coeff << '\n';
    return os.str();
}

}  // namespace pwl
