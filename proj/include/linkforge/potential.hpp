#pragma once
#include <vector>

#include "linkforge/geometry.hpp"
#include "linkforge/quad_moduli.hpp"

namespace linkforge {

/// Vertex charges. The default quad system carries a controlling charge t at
/// one vertex (vertex 1 puts it on the x13 term, vertex 2 on the x24 term);
/// the default pentagon system carries t at vertex 3 and s at vertex 5, so the
/// diagonal terms read t/x13 + s/x25 + s t/x35 + 1/x14 + 1/x24.
/// Non-controlled charges are fixed at +1 unless the system is generic.
class ChargeSystem {
public:
    static ChargeSystem quad(double t, int controlled_vertex = 1);
    static ChargeSystem pentagon(double s, double t);
    static ChargeSystem generic(std::vector<double> charges);

    int n() const { return static_cast<int>(q_.size()); }
    const std::vector<double>& charges() const { return q_; }
    double charge(int vertex) const { return q_[static_cast<size_t>(vertex - 1)]; }   // 1-based
    bool is_generic() const { return generic_; }
    int controlled_vertex() const { return controlled_; }   // quad systems

    /// Charge products on the quad diagonals (x13, x24).
    std::pair<double, double> quad_diagonal_coefficients() const;
    /// Charge products on the pentagon diagonals, ordered (x13, x14, x24, x25, x35).
    std::array<double, 5> pentagon_diagonal_coefficients() const;

private:
    ChargeSystem(std::vector<double> q, bool generic, int controlled)
        : q_(std::move(q)), generic_(generic), controlled_(controlled) {}
    std::vector<double> q_;
    bool generic_ = false;
    int controlled_ = 0;
};

/// Family of potentials over pair distances: coulomb 1/d, power 1/d^alpha,
/// log ln(d).
struct PotentialSpec {
    enum class Kind { coulomb, power, log };
    Kind kind = Kind::coulomb;
    double alpha = 1.0;

    static PotentialSpec coulomb() { return {Kind::coulomb, 1.0}; }
    static PotentialSpec power(double alpha);
    static PotentialSpec logarithmic() { return {Kind::log, 0.0}; }

    double term(double dist) const;         // f(d)
    double dterm(double dist) const;        // f'(d)
};

/// Sum over all unordered vertex pairs, edges included.
double full_potential(const QuadConfig& config, const ChargeSystem& charges);
double full_potential(const PentagonConfig& config, const ChargeSystem& charges);

/// Sum over non-adjacent pairs (the diagonals) only; differs from the full
/// potential by a configuration-independent constant.
double effective_potential(const QuadConfig& config, const ChargeSystem& charges);
double effective_potential(const PentagonConfig& config, const ChargeSystem& charges);

double potential_alpha(const QuadConfig& config, const ChargeSystem& charges, double alpha);
double potential_alpha(const PentagonConfig& config, const ChargeSystem& charges, double alpha);

double potential_log(const QuadConfig& config, const ChargeSystem& charges);
double potential_log(const PentagonConfig& config, const ChargeSystem& charges);

/// Effective potential of a quad directly from its diagonals.
double quad_energy_xy(const ChargeSystem& charges, const PotentialSpec& spec,
                      double x, double y);

/// Pentagon effective potential from the five diagonals (x13, x14, x24, x25, x35).
double pentagon_energy(const ChargeSystem& charges, const PotentialSpec& spec,
                       const std::array<double, 5>& diag);

/// Analytic dE/dphi along the oval via the tangent of g; agrees with central
/// finite differences of E(phi) away from poles.
double quad_potential_derivative(const OvalModel& model, const ChargeSystem& charges,
                                 double phi, const PotentialSpec& spec = PotentialSpec::coulomb(),
                                 double hint = -1.0);

/// E(phi) on the oval.
double quad_potential_at(const OvalModel& model, const ChargeSystem& charges,
                         double phi, const PotentialSpec& spec = PotentialSpec::coulomb(),
                         double hint = -1.0);

} // namespace linkforge
