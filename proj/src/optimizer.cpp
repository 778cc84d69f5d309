#include "spares/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "spares/csv.hpp"
#include "spares/parallel.hpp"
#include "spares/rng.hpp"

namespace spares::opt {

void VariableBounds::validate() const {
    auto check = [](double lo, double hi, const char* name) {
        if (!(lo <= hi)) throw std::invalid_argument(std::string("bounds: lo > hi for ") + name);
    };
    check(n_parking_lo, n_parking_hi, "n_parking");
    check(h_parking_lo_km, h_parking_hi_km, "h_parking");
    check(q_plane_lo, q_plane_hi, "q_plane");
    check(s_plane_lo, s_plane_hi, "s_plane");
    check(k_q_lo, k_q_hi, "k_q");
    check(k_s_lo, k_s_hi, "k_s");
    if (n_parking_lo < 1 || q_plane_lo < 1 || s_plane_lo < 1 || k_q_lo < 1 || k_s_lo < 1) {
        throw std::invalid_argument("bounds: integer variables must be >= 1");
    }
}

bool VariableBounds::contains(const SpareStrategy& s) const {
    return s.n_parking >= n_parking_lo && s.n_parking <= n_parking_hi &&
           s.h_parking_km >= h_parking_lo_km && s.h_parking_km <= h_parking_hi_km &&
           s.q_plane >= q_plane_lo && s.q_plane <= q_plane_hi && s.s_plane >= s_plane_lo &&
           s.s_plane <= s_plane_hi && s.k_q_parking >= k_q_lo && s.k_q_parking <= k_q_hi &&
           s.k_s_parking >= k_s_lo && s.k_s_parking <= k_s_hi;
}

void GaSettings::validate() const {
    if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
    if (generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
    if (elitism < 0 || elitism >= population) throw std::invalid_argument("ga: elitism must be in [0, population)");
    if (tournament < 1) throw std::invalid_argument("ga: tournament size must be >= 1");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw std::invalid_argument("ga: crossover_rate must be in [0, 1]");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw std::invalid_argument("ga: mutation_rate must be in [0, 1]");
    if (!(h_mutation_sigma_km >= 0.0)) throw std::invalid_argument("ga: h_mutation_sigma_km must be >= 0");
    if (restarts < 1) throw std::invalid_argument("ga: restarts must be >= 1");
}

void OptimizationProblem::validate() const {
    constellation.validate();
    launch.validate();
    costs.validate();
    satellite.validate();
    earth.validate();
    if (!(rho_target > 0.0 && rho_target < 1.0)) throw std::invalid_argument("rho_target must be in (0, 1)");
    bounds.validate();
    ga.validate();
    if (inplane_s_max < 1) throw std::invalid_argument("inplane_s_max must be >= 1");
}

Fitness fitness(const SpareStrategy& candidate, const OptimizationProblem& prob) {
    Fitness f;
    try {
        candidate.validate(prob.constellation);
        f.metrics = evaluate_strategy(prob.constellation, candidate, prob.launch, prob.earth);
        const auto transfer = parking_transfer(prob.constellation, candidate, prob.satellite, prob.earth);
        f.cost = tessac(prob.constellation, candidate, f.metrics, transfer, prob.costs, prob.launch,
                        CapacityCheck::ignore);
    } catch (const std::exception& e) {
        f.error = e.what();
        f.tessac = std::numeric_limits<double>::infinity();
        f.penalized = kErrorPenalty;
        return f;
    }
    f.tessac = f.cost.tessac;
    const double cap = prob.launch.cap_launch;
    f.capacity_violation = std::max(0.0, (candidate.q_parking_sats() - cap) / cap);
    f.fill_rate_product = f.metrics.fill_rate_product(prob.constellation.n_plane, candidate.n_parking);
    f.fill_rate_violation = std::max(0.0, (prob.rho_target - f.fill_rate_product) / prob.rho_target);
    f.feasible = f.capacity_violation == 0.0 && f.fill_rate_violation == 0.0;
    f.penalized = f.tessac + kPenaltyWeight * (f.capacity_violation + f.fill_rate_violation);
    return f;
}

namespace {

auto key(const SpareStrategy& s) {
    return std::make_tuple(s.n_parking, s.h_parking_km, s.q_plane, s.s_plane, s.k_q_parking, s.k_s_parking);
}

struct Individual {
    SpareStrategy genes;
    Fitness fit;
};

bool less(const Individual& a, const Individual& b) { return better(a.fit, a.genes, b.fit, b.genes); }

SpareStrategy random_individual(const VariableBounds& b, rng::Stream& rs) {
    SpareStrategy s;
    s.n_parking = rs.uniform_int(b.n_parking_lo, b.n_parking_hi);
    s.h_parking_km = b.h_parking_lo_km + rs.uniform() * (b.h_parking_hi_km - b.h_parking_lo_km);
    s.q_plane = rs.uniform_int(b.q_plane_lo, b.q_plane_hi);
    s.s_plane = rs.uniform_int(b.s_plane_lo, b.s_plane_hi);
    s.k_q_parking = rs.uniform_int(b.k_q_lo, b.k_q_hi);
    s.k_s_parking = rs.uniform_int(b.k_s_lo, b.k_s_hi);
    return s;
}

const Individual& tournament(const std::vector<Individual>& pop, int size, rng::Stream& rs) {
    const Individual* winner = &pop[static_cast<std::size_t>(rs.uniform_int(static_cast<int>(pop.size())))];
    for (int k = 1; k < size; ++k) {
        const Individual& c = pop[static_cast<std::size_t>(rs.uniform_int(static_cast<int>(pop.size())))];
        if (less(c, *winner)) winner = &c;
    }
    return *winner;
}

void crossover(SpareStrategy& a, SpareStrategy& b, rng::Stream& rs) {
    if (rs.uniform() < 0.5) std::swap(a.n_parking, b.n_parking);
    if (rs.uniform() < 0.5) std::swap(a.h_parking_km, b.h_parking_km);
    if (rs.uniform() < 0.5) std::swap(a.q_plane, b.q_plane);
    if (rs.uniform() < 0.5) std::swap(a.s_plane, b.s_plane);
    if (rs.uniform() < 0.5) std::swap(a.k_q_parking, b.k_q_parking);
    if (rs.uniform() < 0.5) std::swap(a.k_s_parking, b.k_s_parking);
}

// Integer genes move one step half of the time and are redrawn otherwise.
int mutate_int(int v, int lo, int hi, rng::Stream& rs) {
    if (lo == hi) return lo;
    if (rs.uniform() < 0.5) {
        const int step = rs.uniform() < 0.5 ? -1 : 1;
        return std::clamp(v + step, lo, hi);
    }
    return rs.uniform_int(lo, hi);
}

void mutate(SpareStrategy& s, const OptimizationProblem& prob, rng::Stream& rs) {
    const VariableBounds& b = prob.bounds;
    const double p = prob.ga.mutation_rate;
    if (rs.uniform() < p) s.n_parking = mutate_int(s.n_parking, b.n_parking_lo, b.n_parking_hi, rs);
    if (rs.uniform() < p) {
        s.h_parking_km = std::clamp(rs.normal(s.h_parking_km, prob.ga.h_mutation_sigma_km),
                                    b.h_parking_lo_km, b.h_parking_hi_km);
    }
    if (rs.uniform() < p) s.q_plane = mutate_int(s.q_plane, b.q_plane_lo, b.q_plane_hi, rs);
    if (rs.uniform() < p) s.s_plane = mutate_int(s.s_plane, b.s_plane_lo, b.s_plane_hi, rs);
    if (rs.uniform() < p) s.k_q_parking = mutate_int(s.k_q_parking, b.k_q_lo, b.k_q_hi, rs);
    if (rs.uniform() < p) s.k_s_parking = mutate_int(s.k_s_parking, b.k_s_lo, b.k_s_hi, rs);
}

void evaluate_all(std::vector<Individual>& pop, const OptimizationProblem& prob, unsigned jobs) {
    parallel_for(pop.size(), jobs, [&](std::size_t i) { pop[i].fit = fitness(pop[i].genes, prob); });
}

}  // namespace

bool better(const Fitness& a, const SpareStrategy& sa, const Fitness& b, const SpareStrategy& sb) {
    if (a.penalized != b.penalized) return a.penalized < b.penalized;
    return key(sa) < key(sb);
}

OptimizationResult optimize(const OptimizationProblem& prob, std::uint64_t seed, unsigned jobs) {
    prob.validate();
    const GaSettings& ga = prob.ga;
    const auto pop_size = static_cast<std::size_t>(ga.population);

    OptimizationResult result;
    result.seed = seed;
    bool have_best = false;
    Individual best;

    for (int r = 0; r < ga.restarts; ++r) {
        rng::Stream rs(rng::derive_seed(seed, "ga", static_cast<std::uint64_t>(r)));
        std::vector<Individual> pop(pop_size);
        for (auto& ind : pop) ind.genes = random_individual(prob.bounds, rs);
        evaluate_all(pop, prob, jobs);
        result.evaluations += static_cast<long>(pop.size());

        for (int g = 0;; ++g) {
            std::sort(pop.begin(), pop.end(), less);
            double mean = 0.0;
            for (const auto& ind : pop) mean += ind.fit.penalized;
            result.trace.push_back({r, g, pop.front().fit.penalized, mean / static_cast<double>(pop.size())});
            for (const auto& ind : pop) {
                if (!ind.fit.feasible) continue;
                if (!have_best || less(ind, best)) {
                    best = ind;
                    have_best = true;
                }
                break;  // sorted, so the first feasible one is the best feasible
            }
            if (g == ga.generations) break;

            std::vector<Individual> next(pop.begin(), pop.begin() + ga.elitism);
            std::vector<Individual> children;
            while (next.size() + children.size() < pop_size) {
                SpareStrategy a = tournament(pop, ga.tournament, rs).genes;
                SpareStrategy b = tournament(pop, ga.tournament, rs).genes;
                if (rs.uniform() < ga.crossover_rate) crossover(a, b, rs);
                mutate(a, prob, rs);
                mutate(b, prob, rs);
                children.push_back({a, {}});
                if (next.size() + children.size() < pop_size) children.push_back({b, {}});
            }
            evaluate_all(children, prob, jobs);
            result.evaluations += static_cast<long>(children.size());
            next.insert(next.end(), children.begin(), children.end());
            pop = std::move(next);
        }
    }

    if (have_best) {
        result.feasible = true;
        result.best = best.genes;
        result.fitness = best.fit;
    } else {
        result.message = "no feasible strategy found";
    }
    return result;
}

InplaneResult optimize_inplane_only(const OptimizationProblem& prob) {
    prob.validate();
    InplaneResult out;
    const int q_max = prob.launch.cap_launch;
    for (int q = 1; q <= q_max; ++q) {
        for (int s = 1; s <= prob.inplane_s_max; ++s) {
            ++out.evaluations;
            const inventory::SQPolicy policy{s, q};
            PolicyMetrics m;
            try {
                m = evaluate_inplane_only(prob.constellation, policy, prob.launch);
            } catch (const std::exception&) {
                continue;
            }
            const double product = std::pow(m.rho_plane, prob.constellation.n_plane);
            if (product < prob.rho_target) continue;
            const CostBreakdown c = tessac_inplane_only(prob.constellation, policy, m, prob.costs, prob.launch);
            // Larger s only adds holding once feasible, so stop scanning this q.
            if (!out.feasible || c.tessac < out.cost.tessac) {
                out.feasible = true;
                out.policy = policy;
                out.cost = c;
                out.metrics = m;
                out.fill_rate_product = product;
            }
            break;
        }
    }
    if (!out.feasible) out.message = "no feasible (s, Q) policy within bounds";
    return out;
}

double savings_pct(double tessac_inplane, double tessac_multi) {
    if (!(tessac_inplane > 0.0)) throw std::domain_error("savings_pct: baseline cost must be > 0");
    return (tessac_inplane - tessac_multi) / tessac_inplane * 100.0;
}

std::vector<SensitivityRow> sensitivity_sweep(const OptimizationProblem& prob,
                                              const std::vector<double>& rates,
                                              std::uint64_t seed, unsigned jobs) {
    std::vector<SensitivityRow> rows;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        SensitivityRow row;
        row.lambda_sat_per_year = rates[i];
        try {
            if (!(rates[i] >= 0.001 && rates[i] <= 0.1)) {
                throw std::invalid_argument("failure rate outside [0.001, 0.1] per year");
            }
            OptimizationProblem p = prob;
            p.constellation.lambda_sat_per_year = rates[i];
            const OptimizationResult multi = optimize(p, rng::derive_seed(seed, "sensitivity", i), jobs);
            const InplaneResult base = optimize_inplane_only(p);
            if (!multi.feasible) throw std::runtime_error("multi-echelon: " + multi.message);
            if (!base.feasible) throw std::runtime_error("in-plane only: " + base.message);
            row.multi = multi.best;
            row.inplane = base.policy;
            row.tessac_multi = multi.fitness.tessac;
            row.tessac_inplane = base.cost.tessac;
            row.savings_pct = savings_pct(row.tessac_inplane, row.tessac_multi);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    csv::write_row(out, {"restart", "generation", "best_fitness", "mean_fitness"});
    for (const auto& t : trace) {
        csv::write_row(out, {std::to_string(t.restart), std::to_string(t.generation),
                             csv::format_double(t.best), csv::format_double(t.mean)});
    }
}

void write_result_csv(std::ostream& out, const OptimizationResult* multi, const InplaneResult* inplane) {
    using csv::format_double;
    csv::write_row(out, {"strategy", "feasible", "n_parking", "h_parking_km", "q_plane", "s_plane",
                         "k_q_parking", "k_s_parking", "manufacturing", "holding", "launch",
                         "maneuvering", "tessac", "fill_rate_product", "savings_pct"});
    const std::vector<std::string> blank(13, "");
    auto empty_row = [&](const char* name) {
        std::vector<std::string> row = {name, "0"};
        row.insert(row.end(), blank.begin(), blank.end());
        csv::write_row(out, row);
    };
    if (multi) {
        if (multi->feasible) {
            const auto& s = multi->best;
            const auto& c = multi->fitness.cost;
            std::string savings;
            if (inplane && inplane->feasible) savings = format_double(savings_pct(inplane->cost.tessac, c.tessac));
            csv::write_row(out, {"multi_echelon", "1", std::to_string(s.n_parking), format_double(s.h_parking_km),
                                 std::to_string(s.q_plane), std::to_string(s.s_plane),
                                 std::to_string(s.k_q_parking), std::to_string(s.k_s_parking),
                                 format_double(c.manufacturing), format_double(c.holding),
                                 format_double(c.launch), format_double(c.maneuvering),
                                 format_double(c.tessac), format_double(multi->fitness.fill_rate_product),
                                 savings});
        } else {
            empty_row("multi_echelon");
        }
    }
    if (inplane) {
        if (inplane->feasible) {
            const auto& b = inplane->cost;
            csv::write_row(out, {"inplane_only", "1", "", "", std::to_string(inplane->policy.order_quantity_q),
                                 std::to_string(inplane->policy.reorder_point_s), "", "",
                                 format_double(b.manufacturing), format_double(b.holding),
                                 format_double(b.launch), format_double(b.maneuvering),
                                 format_double(b.tessac), format_double(inplane->fill_rate_product), ""});
        } else {
            empty_row("inplane_only");
        }
    }
}

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows) {
    using csv::format_double;
    csv::write_row(out, {"lambda_sat_per_year", "ok", "tessac_multi", "tessac_inplane", "savings_pct",
                         "n_parking", "h_parking_km", "q_plane", "s_plane", "k_q_parking",
                         "k_s_parking", "inplane_q", "inplane_s", "error"});
    for (const auto& r : rows) {
        if (r.ok) {
            csv::write_row(out, {format_double(r.lambda_sat_per_year), "1", format_double(r.tessac_multi),
                                 format_double(r.tessac_inplane), format_double(r.savings_pct),
                                 std::to_string(r.multi.n_parking), format_double(r.multi.h_parking_km),
                                 std::to_string(r.multi.q_plane), std::to_string(r.multi.s_plane),
                                 std::to_string(r.multi.k_q_parking), std::to_string(r.multi.k_s_parking),
                                 std::to_string(r.inplane.order_quantity_q),
                                 std::to_string(r.inplane.reorder_point_s), ""});
        } else {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            csv::write_row(out, {format_double(r.lambda_sat_per_year), "0", "", "", "", "", "", "", "",
                                 "", "", "", "", msg});
        }
    }
}

}  // namespace spares::opt
