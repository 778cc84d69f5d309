#include "spares/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "spares/parallel.hpp"
#include "spares/rng.hpp"

namespace spares::sim {

void SimConfig::validate() const {
    constellation.validate();
    strategy.validate(constellation);
    launch.validate();
    costs.validate();
    satellite.validate();
    earth.validate();
    if (!(horizon_years > 0.0)) throw std::invalid_argument("simulation horizon must be > 0");
    if (!(warmup_years >= 0.0 && warmup_years < horizon_years)) {
        throw std::invalid_argument("warm-up must lie in [0, horizon)");
    }
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
}

EventLogger csv_event_logger(std::ostream& out) {
    out << "time_days,event,location,stock\n";
    return [&out](const EventRecord& e) {
        out << e.time_days << ',' << e.type << ',' << e.location << ',' << e.stock << '\n';
    };
}

namespace {

class RandomSource final : public EventSource {
public:
    explicit RandomSource(std::uint64_t seed) : stream_(seed) {}
    double next_failure_gap(double rate) override { return stream_.exponential(1.0 / rate); }
    int failing_plane(int n) override { return stream_.uniform_int(n); }
    double launch_wait(double mean) override { return stream_.exponential(mean); }
    long initial_level(long lo, long hi) override {
        return lo + static_cast<long>(stream_.uniform_int(static_cast<int>(hi - lo + 1)));
    }

private:
    rng::Stream stream_;
};

enum class EventType { failure, plane_arrival, parking_arrival };

struct Event {
    double time;
    std::uint64_t seq;
    EventType type;
    int index;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct PlaneState {
    long on_hand = 0;
    long backorders = 0;
    bool outstanding = false;  // order placed and not yet delivered
    double order_time = 0.0;
};

struct ParkingState {
    long on_hand = 0;  // batches
    bool outstanding = false;
};

class Replication {
public:
    Replication(const SimConfig& sc, EventSource& source, const EventLogger& log)
        : sc_(sc), source_(source), log_(log) {
        const auto& cfg = sc.constellation;
        const auto& st = sc.strategy;
        const auto parking = st.parking_orbit(cfg);
        const auto plane = cfg.plane_orbit();
        rel_rate_ = orbits::relative_drift_rate(parking, plane, sc.earth);
        if (rel_rate_ == 0.0) throw std::invalid_argument("simulate: zero relative drift rate");
        tof_days_ = orbits::hohmann_time_of_flight_days(parking.semimajor_axis_km(sc.earth),
                                                        plane.semimajor_axis_km(sc.earth), sc.earth);
        fuel_per_sat_kg_ = orbits::hohmann_transfer(parking, plane, sc.satellite.m_dry_kg,
                                                    sc.satellite.v_exhaust_km_s, sc.earth)
                               .fuel_mass_kg;
        lambda_plane_ = plane_demand_rate(cfg);
        horizon_ = sc.horizon_years * cfg.n_days_per_year;
        warmup_ = sc.warmup_years * cfg.n_days_per_year;

        const bool stationary = sc.initial_stock == InitialStock::stationary;
        planes_.assign(cfg.n_plane, PlaneState{});
        for (auto& p : planes_) {
            p.on_hand = stationary ? source_.initial_level(st.s_plane + 1, st.s_plane + st.q_plane)
                                   : st.s_plane + st.q_plane;
            plane_stock_total_ += p.on_hand;
        }
        plane_open_orders_.assign(cfg.n_plane, 0);
        parking_open_orders_.assign(st.n_parking, 0);
        parkings_.assign(st.n_parking, ParkingState{});
        for (auto& p : parkings_) {
            p.on_hand = stationary ? source_.initial_level(st.k_s_parking + 1, st.k_s_parking + st.k_q_parking)
                                   : st.k_s_parking + st.k_q_parking;
            parking_stock_total_ += p.on_hand;
        }
        initial_sats_ = plane_stock_total_ + parking_stock_total_ * st.q_plane;
    }

    ReplicationResult run() {
        const double total_rate = lambda_plane_ * sc_.constellation.n_plane;
        if (total_rate > 0.0) push(source_.next_failure_gap(total_rate), EventType::failure, -1);
        while (!events_.empty() && events_.top().time <= horizon_) {
            const Event e = events_.top();
            events_.pop();
            advance(e.time);
            switch (e.type) {
                case EventType::failure:
                    on_failure(source_.failing_plane(sc_.constellation.n_plane));
                    push(now_ + source_.next_failure_gap(total_rate), EventType::failure, -1);
                    break;
                case EventType::plane_arrival:
                    on_plane_arrival(e.index);
                    break;
                case EventType::parking_arrival:
                    on_parking_arrival(e.index);
                    break;
            }
            check_outstanding_invariant();
        }
        advance(horizon_);
        return finish();
    }

private:
    bool in_window() const { return now_ >= warmup_; }

    void push(double time, EventType type, int index) {
        events_.push(Event{time, seq_++, type, index});
    }

    void advance(double t) {
        const double from = std::max(now_, warmup_);
        const double to = std::min(t, horizon_);
        if (to > from) {
            plane_area_ += static_cast<double>(plane_stock_total_) * (to - from);
            parking_area_ += static_cast<double>(parking_stock_total_) * (to - from);
        }
        now_ = t;
    }

    void emit(const char* type, const std::string& location, long stock) {
        if (log_) log_(EventRecord{now_, type, location, stock});
    }

    // Remaining RAAN the parking plane must regress to line up with plane k.
    double drift_wait(int parking, int plane) const {
        const double phase_parking =
            parking * orbits::kTwoPi / sc_.strategy.n_parking + rel_rate_ * now_;
        const double phase_plane = plane * orbits::kTwoPi / sc_.constellation.n_plane;
        const double dir = rel_rate_ < 0.0 ? 1.0 : -1.0;
        double d = std::fmod(dir * (phase_parking - phase_plane), orbits::kTwoPi);
        if (d < 0.0) d += orbits::kTwoPi;
        if (d >= orbits::kTwoPi) d = 0.0;
        return d / std::abs(rel_rate_);
    }

    // Closest parking orbit for plane k, optionally only among stocked ones.
    int closest_parking(int plane, bool require_stock) const {
        int best = -1;
        double best_wait = std::numeric_limits<double>::infinity();
        for (int j = 0; j < sc_.strategy.n_parking; ++j) {
            if (require_stock && parkings_[j].on_hand < 1) continue;
            const double w = drift_wait(j, plane);
            if (w < best_wait) {
                best_wait = w;
                best = j;
            }
        }
        return best;
    }

    void on_failure(int k) {
        PlaneState& p = planes_[k];
        ++failures_total_;
        if (in_window()) ++failures_;
        if (p.on_hand > 0) {
            --p.on_hand;
            --plane_stock_total_;
        } else {
            ++p.backorders;
            if (in_window()) ++backordered_units_;
        }
        emit("failure", "plane:" + std::to_string(k), p.on_hand);
        check_plane_reorder(k);
    }

    void check_plane_reorder(int k) {
        PlaneState& p = planes_[k];
        if (p.outstanding || p.on_hand - p.backorders > sc_.strategy.s_plane) return;
        p.outstanding = true;
        p.order_time = now_;
        ++plane_open_orders_[k];
        emit("plane_order", "plane:" + std::to_string(k), p.on_hand);

        // The nominal supplier is the closest parking orbit regardless of
        // stock; finding it empty is a backordered batch at that orbit.
        const int nominal = closest_parking(k, false);
        if (parkings_[nominal].on_hand < 1 && in_window()) ++parking_misses_;

        const int supplier = closest_parking(k, true);
        if (supplier < 0) {
            pending_.push_back(k);
            if (in_window()) ++queued_orders_;
            return;
        }
        dispatch(k, supplier);
    }

    void dispatch(int k, int j) {
        PlaneState& p = planes_[k];
        ParkingState& park = parkings_[j];
        --park.on_hand;
        --parking_stock_total_;
        ++batches_in_transfer_;
        const double arrival = now_ + drift_wait(j, k) + tof_days_;
        if (sc_.record_lead_times) lead_times_.push_back(arrival - p.order_time);
        push(arrival, EventType::plane_arrival, k);
        check_parking_reorder(j);
    }

    void check_parking_reorder(int j) {
        ParkingState& park = parkings_[j];
        if (park.outstanding || park.on_hand > sc_.strategy.k_s_parking) return;
        park.outstanding = true;
        ++parking_open_orders_[j];
        ++ground_orders_;
        emit("parking_order", "parking:" + std::to_string(j), park.on_hand);
        const double wait = source_.launch_wait(sc_.launch.mu_launch_days);
        push(now_ + sc_.launch.pt_launch_days + wait, EventType::parking_arrival, j);
    }

    void on_plane_arrival(int k) {
        PlaneState& p = planes_[k];
        const long q = sc_.strategy.q_plane;
        const long served = std::min(p.backorders, q);
        p.backorders -= served;
        p.on_hand += q - served;
        plane_stock_total_ += q - served;
        p.outstanding = false;
        --plane_open_orders_[k];
        --batches_in_transfer_;
        if (in_window()) {
            ++plane_cycles_;
            transferred_sats_ += q;
        }
        emit("plane_arrival", "plane:" + std::to_string(k), p.on_hand);
        check_plane_reorder(k);
    }

    void on_parking_arrival(int j) {
        ParkingState& park = parkings_[j];
        park.on_hand += sc_.strategy.k_q_parking;
        parking_stock_total_ += sc_.strategy.k_q_parking;
        park.outstanding = false;
        --parking_open_orders_[j];
        ++ground_arrivals_;
        if (in_window()) {
            ++parking_cycles_;
            ++launches_;
        }
        emit("parking_arrival", "parking:" + std::to_string(j), park.on_hand);

        // Re-dispatch queued plane orders in arrival order.
        while (!pending_.empty()) {
            const int k = pending_.front();
            const int supplier = closest_parking(k, true);
            if (supplier < 0) break;
            pending_.pop_front();
            dispatch(k, supplier);
        }
        check_parking_reorder(j);
    }

    void check_outstanding_invariant() {
        int worst = 0;
        for (int n : plane_open_orders_) worst = std::max(worst, n);
        for (int n : parking_open_orders_) worst = std::max(worst, n);
        assert(worst <= 1);
        max_outstanding_ = std::max(max_outstanding_, worst);
    }

    ReplicationResult finish() const {
        const auto& cfg = sc_.constellation;
        const auto& st = sc_.strategy;
        const double window_days = horizon_ - warmup_;
        const double window_years = window_days / cfg.n_days_per_year;

        ReplicationResult r;
        r.mean_stock_plane = plane_area_ / window_days / cfg.n_plane;
        r.mean_stock_parking_batches = parking_area_ / window_days / st.n_parking;
        r.rho_plane = cycle_fill_rate(backordered_units_, plane_cycles_, st.q_plane);
        r.rho_parking = cycle_fill_rate(parking_misses_, parking_cycles_, st.k_q_parking);
        r.lambda_plane_hat = failures_ / (window_days * cfg.n_plane);

        const auto& cp = sc_.costs;
        r.cost.manufacturing = cp.p_sat_musd * failures_ / window_years;
        r.cost.holding = cp.p_holding_musd_per_sat_year *
                         (r.mean_stock_plane * cfg.n_plane +
                          r.mean_stock_parking_batches * st.q_plane * st.n_parking);
        r.cost.launch = launch_price(st.q_parking_sats(), cp, sc_.launch.cap_launch,
                                     CapacityCheck::ignore) *
                        launches_ / window_years;
        r.cost.maneuvering =
            fuel_per_sat_kg_ * transferred_sats_ * cp.eps_maneuvering_musd_per_kg / window_years;
        r.cost.tessac = r.cost.manufacturing + r.cost.holding + r.cost.launch + r.cost.maneuvering;

        r.failures = failures_;
        r.backordered_units = backordered_units_;
        r.plane_cycles = plane_cycles_;
        r.parking_cycles = parking_cycles_;
        r.parking_misses = parking_misses_;
        r.launches = launches_;
        r.transferred_sats = transferred_sats_;
        r.queued_orders = queued_orders_;
        r.max_outstanding_per_location = max_outstanding_;

        long outstanding_backorders = 0;
        for (const auto& p : planes_) outstanding_backorders += p.backorders;
        const long q_parking = st.q_parking_sats();
        r.ledger.ordered_from_ground = ground_orders_ * q_parking;
        r.ledger.consumed = failures_total_ - outstanding_backorders;
        r.ledger.in_transit_ground = (ground_orders_ - ground_arrivals_) * q_parking;
        r.ledger.in_transit_transfer = batches_in_transfer_ * st.q_plane;
        r.ledger.stock_delta = plane_stock_total_ + parking_stock_total_ * st.q_plane - initial_sats_;
        r.plane_lead_times = lead_times_;
        return r;
    }

    static double cycle_fill_rate(long short_units, long cycles, int q) {
        if (cycles == 0) return short_units == 0 ? 1.0 : 0.0;
        return std::clamp(1.0 - static_cast<double>(short_units) / (static_cast<double>(q) * cycles),
                          0.0, 1.0);
    }

    const SimConfig& sc_;
    EventSource& source_;
    const EventLogger& log_;

    double rel_rate_ = 0.0;
    double tof_days_ = 0.0;
    double fuel_per_sat_kg_ = 0.0;
    double lambda_plane_ = 0.0;
    double horizon_ = 0.0;
    double warmup_ = 0.0;

    double now_ = 0.0;
    std::uint64_t seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> events_;
    std::vector<PlaneState> planes_;
    std::vector<ParkingState> parkings_;
    std::deque<int> pending_;
    std::vector<int> plane_open_orders_;
    std::vector<int> parking_open_orders_;

    long plane_stock_total_ = 0;
    long parking_stock_total_ = 0;
    long initial_sats_ = 0;
    double plane_area_ = 0.0;
    double parking_area_ = 0.0;

    long failures_total_ = 0;
    long ground_orders_ = 0;
    long ground_arrivals_ = 0;
    long batches_in_transfer_ = 0;

    long failures_ = 0;
    long backordered_units_ = 0;
    long plane_cycles_ = 0;
    long parking_cycles_ = 0;
    long parking_misses_ = 0;
    long launches_ = 0;
    long transferred_sats_ = 0;
    long queued_orders_ = 0;
    int max_outstanding_ = 0;
    std::vector<double> lead_times_;
};

}  // namespace

ReplicationResult simulate(const SimConfig& sc, EventSource& source, const EventLogger& log) {
    sc.validate();
    Replication rep(sc, source, log);
    return rep.run();
}

ReplicationResult run_replication(const SimConfig& sc, std::uint64_t seed, const EventLogger& log) {
    RandomSource source(seed);
    return simulate(sc, source, log);
}

Estimate estimate(const std::vector<double>& values) {
    Estimate e;
    if (values.empty()) return e;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

SimulationResult run_batch(const SimConfig& sc, unsigned jobs) {
    sc.validate();
    SimulationResult out;
    out.replications.resize(sc.replications);
    parallel_for(out.replications.size(), jobs, [&](std::size_t r) {
        out.replications[r] = run_replication(sc, rng::derive_seed(sc.seed, "replication", r));
    });

    auto collect = [&](auto field) {
        std::vector<double> v;
        v.reserve(out.replications.size());
        for (const auto& rep : out.replications) v.push_back(field(rep));
        return estimate(v);
    };
    out.mean_stock_plane = collect([](const ReplicationResult& r) { return r.mean_stock_plane; });
    out.mean_stock_parking_batches =
        collect([](const ReplicationResult& r) { return r.mean_stock_parking_batches; });
    out.rho_plane = collect([](const ReplicationResult& r) { return r.rho_plane; });
    out.rho_parking = collect([](const ReplicationResult& r) { return r.rho_parking; });
    out.tessac = collect([](const ReplicationResult& r) { return r.cost.tessac; });
    out.lambda_plane_hat = collect([](const ReplicationResult& r) { return r.lambda_plane_hat; });
    return out;
}

}  // namespace spares::sim
