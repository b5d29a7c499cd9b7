#include "goigrid/synth.hpp"

#include "goigrid/error.hpp"
#include "goigrid/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace goigrid {

// RandomStream ---------------------------------------------------------------------

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t component) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), component};
    engine_.seed(seq);
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
}

double RandomStream::normal() {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Spec -------------------------------------------------------------------------------

void ScenarioSpec::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InvalidInput(std::string("scenario: ") + what);
    };
    require(goi_count >= 1, "goi_count must be at least 1");
    require(goi_size_min > 0.0 && goi_size_max >= goi_size_min, "GOI size range invalid");
    require(area_size >= goi_size_max, "area_size must fit the largest GOI");
    require(goi_spacing >= 0.0, "goi_spacing must be non-negative");
    require(visits_per_goi >= 1, "visits_per_goi must be at least 1");
    require(dwell_min > 0 && dwell_max >= dwell_min, "dwell range invalid");
    require(walk_step >= 0.0, "walk_step must be non-negative");
    require(speed > 0.0, "speed must be positive");
    require(sample_interval > 0, "sample_interval must be positive");
    require(gap_probability >= 0.0 && gap_probability <= 1.0, "gap_probability must lie in [0, 1]");
    require(gap_min > 0 && gap_max >= gap_min, "gap range invalid");
    require(noise_sigma >= 0.0, "noise_sigma must be non-negative");
    require(valid_lat_lon(origin), "origin out of range");
    require(placement_attempts >= 1, "placement_attempts must be at least 1");
}

namespace {

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        T value{};
        if constexpr (std::is_same_v<T, double>) value = std::stod(text, &used);
        else if constexpr (std::is_same_v<T, int>) value = std::stoi(text, &used);
        else if constexpr (std::is_same_v<T, std::uint64_t>) value = std::stoull(text, &used);
        else value = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw InvalidInput("scenario: bad value '" + text + "' for " + key);
    }
}

} // namespace

ScenarioSpec apply_scenario_config(ScenarioSpec s, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "goi_count") s.goi_count = parse_value<int>(key, value);
        else if (key == "goi_size_min") s.goi_size_min = parse_value<double>(key, value);
        else if (key == "goi_size_max") s.goi_size_max = parse_value<double>(key, value);
        else if (key == "area_size") s.area_size = parse_value<double>(key, value);
        else if (key == "goi_spacing") s.goi_spacing = parse_value<double>(key, value);
        else if (key == "visits_per_goi") s.visits_per_goi = parse_value<int>(key, value);
        else if (key == "dwell_min") s.dwell_min = parse_value<std::int64_t>(key, value);
        else if (key == "dwell_max") s.dwell_max = parse_value<std::int64_t>(key, value);
        else if (key == "walk_step") s.walk_step = parse_value<double>(key, value);
        else if (key == "speed") s.speed = parse_value<double>(key, value);
        else if (key == "sample_interval") s.sample_interval = parse_value<std::int64_t>(key, value);
        else if (key == "gap_probability") s.gap_probability = parse_value<double>(key, value);
        else if (key == "gap_min") s.gap_min = parse_value<std::int64_t>(key, value);
        else if (key == "gap_max") s.gap_max = parse_value<std::int64_t>(key, value);
        else if (key == "noise_sigma") s.noise_sigma = parse_value<double>(key, value);
        else if (key == "origin_lat") s.origin.lat = parse_value<double>(key, value);
        else if (key == "origin_lon") s.origin.lon = parse_value<double>(key, value);
        else if (key == "start_time") s.start_time = parse_value<std::int64_t>(key, value);
        else if (key == "seed") s.seed = parse_value<std::uint64_t>(key, value);
        else if (key == "placement_attempts") s.placement_attempts = parse_value<int>(key, value);
        else throw InvalidInput("scenario: unknown key '" + key + "'");
    }
    return s;
}

std::map<std::string, std::string> scenario_to_config(const ScenarioSpec& s) {
    return {
        {"goi_count", std::to_string(s.goi_count)},
        {"goi_size_min", format_number(s.goi_size_min)},
        {"goi_size_max", format_number(s.goi_size_max)},
        {"area_size", format_number(s.area_size)},
        {"goi_spacing", format_number(s.goi_spacing)},
        {"visits_per_goi", std::to_string(s.visits_per_goi)},
        {"dwell_min", std::to_string(s.dwell_min)},
        {"dwell_max", std::to_string(s.dwell_max)},
        {"walk_step", format_number(s.walk_step)},
        {"speed", format_number(s.speed)},
        {"sample_interval", std::to_string(s.sample_interval)},
        {"gap_probability", format_number(s.gap_probability)},
        {"gap_min", std::to_string(s.gap_min)},
        {"gap_max", std::to_string(s.gap_max)},
        {"noise_sigma", format_number(s.noise_sigma)},
        {"origin_lat", format_number(s.origin.lat)},
        {"origin_lon", format_number(s.origin.lon)},
        {"start_time", std::to_string(s.start_time)},
        {"seed", std::to_string(s.seed)},
        {"placement_attempts", std::to_string(s.placement_attempts)},
    };
}

// Generation -------------------------------------------------------------------------

namespace {

enum Component : std::uint32_t { kPlacement = 1, kSchedule = 2, kSampling = 3, kWalk = 4, kNoise = 5 };

struct Segment {
    Timestamp begin = 0;
    Timestamp end = 0;
    PlanarPoint from;    // travel only
    PlanarPoint to;      // travel only
    int goi = -1;        // dwell when >= 0
};

std::vector<BoundingBox> place_gois(const ScenarioSpec& spec, RandomStream& rng) {
    std::vector<BoundingBox> placed;
    for (int g = 0; g < spec.goi_count; ++g) {
        bool ok = false;
        for (int attempt = 0; attempt < spec.placement_attempts && !ok; ++attempt) {
            const double w = rng.uniform(spec.goi_size_min, spec.goi_size_max);
            const double h = rng.uniform(spec.goi_size_min, spec.goi_size_max);
            const double x = rng.uniform(0.0, spec.area_size - w);
            const double y = rng.uniform(0.0, spec.area_size - h);
            const BoundingBox candidate{x, y, x + w, y + h};
            const BoundingBox padded{x - spec.goi_spacing, y - spec.goi_spacing,
                                     x + w + spec.goi_spacing, y + h + spec.goi_spacing};
            ok = std::none_of(placed.begin(), placed.end(),
                              [&](const BoundingBox& b) { return padded.intersects(b); });
            if (ok) placed.push_back(candidate);
        }
        if (!ok)
            throw InvalidInput("scenario: could not place GOI " + std::to_string(g) + " after " +
                               std::to_string(spec.placement_attempts) + " attempts");
    }
    return placed;
}

std::vector<int> visit_order(const ScenarioSpec& spec, RandomStream& rng) {
    std::vector<int> order;
    for (int g = 0; g < spec.goi_count; ++g)
        for (int v = 0; v < spec.visits_per_goi; ++v) order.push_back(g);
    for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1))]);
    // Separate back-to-back visits of one GOI where another GOI can be swapped in.
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (order[k] != order[k - 1]) continue;
        for (std::size_t m = k + 1; m < order.size(); ++m) {
            if (order[m] != order[k]) {
                std::swap(order[k], order[m]);
                break;
            }
        }
    }
    return order;
}

PlanarPoint reflect_into(PlanarPoint p, const BoundingBox& box) {
    auto fold = [](double v, double lo, double hi) {
        const double w = hi - lo;
        if (w <= 0.0) return lo;
        double u = std::fmod(v - lo, 2.0 * w);
        if (u < 0.0) u += 2.0 * w;
        return lo + (u <= w ? u : 2.0 * w - u);
    };
    return {fold(p.x, box.min_x, box.max_x), fold(p.y, box.min_y, box.max_y)};
}

} // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
    spec.validate();
    RandomStream placement(spec.seed, kPlacement);
    RandomStream schedule(spec.seed, kSchedule);
    RandomStream sampling(spec.seed, kSampling);
    RandomStream walk(spec.seed, kWalk);
    RandomStream noise(spec.seed, kNoise);

    const auto gois = place_gois(spec, placement);
    const auto order = visit_order(spec, schedule);
    const PlanarPoint depot{-0.2 * spec.area_size, -0.2 * spec.area_size};

    // Timeline: depot -> visit -> ... -> visit -> depot.
    std::vector<Segment> segments;
    std::vector<Visit> visits;
    std::vector<PlanarPoint> entries;
    Timestamp clock = spec.start_time;
    PlanarPoint here = depot;
    auto travel = [&](const PlanarPoint& to) {
        const auto duration = std::max<Timestamp>(
            1, static_cast<Timestamp>(std::ceil(euclidean_distance(here, to) / spec.speed)));
        segments.push_back({clock, clock + duration, here, to, -1});
        clock += duration;
        here = to;
    };
    for (std::size_t v = 0; v < order.size(); ++v) {
        const BoundingBox& box = gois[static_cast<std::size_t>(order[v])];
        if (v > 0 && order[v] == order[v - 1]) travel(depot);
        const PlanarPoint entry{schedule.uniform(box.min_x, box.max_x),
                                schedule.uniform(box.min_y, box.max_y)};
        travel(entry);
        const Timestamp dwell = schedule.uniform_int(spec.dwell_min, spec.dwell_max);
        segments.push_back({clock, clock + dwell, entry, entry, order[v]});
        visits.push_back({order[v], clock, clock + dwell});
        entries.push_back(entry);
        clock += dwell;
    }
    travel(depot);
    const Timestamp finish = clock;

    // Sample times, with occasional gaps.
    std::vector<Timestamp> times;
    for (Timestamp t = spec.start_time; t <= finish;) {
        times.push_back(t);
        if (sampling.uniform() < spec.gap_probability)
            t += sampling.uniform_int(spec.gap_min, spec.gap_max);
        else
            t += spec.sample_interval;
    }
    if (times.back() != finish) times.push_back(finish);

    std::vector<TrackPoint> points;
    points.reserve(times.size());
    std::size_t seg = 0;
    int walking_visit = -1;
    std::size_t visit_index = 0;
    PlanarPoint walker;
    Timestamp last_step = 0;
    for (Timestamp t : times) {
        while (seg + 1 < segments.size() && t >= segments[seg].end) {
            if (segments[seg].goi >= 0) ++visit_index;
            ++seg;
        }
        const Segment& s = segments[seg];
        PlanarPoint truth_pos;
        if (s.goi >= 0) {
            if (walking_visit != static_cast<int>(visit_index)) {
                walking_visit = static_cast<int>(visit_index);
                walker = entries[visit_index];
                last_step = s.begin;
            }
            const double scale =
                std::sqrt(static_cast<double>(t - last_step) / static_cast<double>(spec.sample_interval));
            const double dx = walk.normal() * spec.walk_step * scale;
            const double dy = walk.normal() * spec.walk_step * scale;
            walker = reflect_into({walker.x + dx, walker.y + dy}, gois[static_cast<std::size_t>(s.goi)]);
            last_step = t;
            truth_pos = walker;
        } else {
            const double span = static_cast<double>(s.end - s.begin);
            const double f = std::clamp(static_cast<double>(t - s.begin) / span, 0.0, 1.0);
            truth_pos = {s.from.x + f * (s.to.x - s.from.x), s.from.y + f * (s.to.y - s.from.y)};
        }
        const double nx = noise.normal() * spec.noise_sigma;
        const double ny = noise.normal() * spec.noise_sigma;
        points.push_back({t, {truth_pos.x + nx, truth_pos.y + ny}, 0});
    }

    Scenario scenario{Trajectory(std::move(points), spec.origin), {}, std::move(visits)};
    for (std::size_t g = 0; g < gois.size(); ++g)
        scenario.truth.gois.emplace_back(static_cast<int>(g), Region::rectangle(gois[g]));
    return scenario;
}

} // namespace goigrid
