#include "atmscore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "atmscore/errors.hpp"
#include "atmscore/rng.hpp"

namespace atmscore {

namespace {

constexpr const char* kModule = "synth";
constexpr int kTiers = 7;

const std::vector<std::string> kPlaceNames = {
    "Alder",      "Aspen",      "Bayside",    "Birch",      "Cedar",      "Crestline",
    "Cypress",    "Dunmore",    "Elmworth",   "Fairhaven",  "Foxglove",   "Glenrose",
    "Harborview", "Hawthorne",  "Ironwood",   "Juniper",    "Kestrel",    "Lakeshore",
    "Larkspur",   "Maplewood",  "Nightfall",  "Oakhurst",   "Pinecrest",  "Quailridge",
    "Redwood",    "Ridgeline",  "Silverleaf", "Stonebrook", "Tamarack",   "Umberhill",
    "Vistamar",   "Willowbend", "Wrenfield",  "Yarrow",     "Amberfield", "Brookhollow",
    "Clearwater", "Driftwood",  "Eastgate",   "Fernvale",   "Goldcrest",  "Hollyvale",
    "Inverness",  "Jadebrook",  "Kingsmere",  "Lunaridge",  "Mistwood",   "Northgate",
    "Opalborne",  "Pebblestone","Quartzvale", "Rosemont",   "Sablewood",  "Thornbury",
    "Uplandale",  "Veranda",    "Westhollow", "Xaviera",    "Yewbrook",   "Zephyrine",
    "Ashgrove",   "Briarcliff", "Coveport",   "Dewhurst",
};

const std::vector<std::string> kNetworks = {
    "AlliedCash", "BayTrust", "CoastalATM", "GoldenState",
    "MetroCash",  "PacificOne", "SummitBank", "UnionPoint",
};

struct ClassTemplates {
    NameTag tag;
    double probability;
    std::vector<const char*> templates;  // {} is the place name, # a number
};

const std::vector<ClassTemplates> kVenueClasses = {
    {NameTag::shopping_malls, 0.08,
     {"{} Mall", "{} Shopping Center, Unit #", "{} Plaza", "{} Outlet Mall"}},
    {NameTag::banks_exchange_centre, 0.22,
     {"{} Bank Branch ##", "{} Credit Union", "{} Exchange Centre"}},
    {NameTag::recreation_centre, 0.10,
     {"{} Recreation Center", "{} Fitness Gym", "{} Stadium", "{} Cinema"}},
    {NameTag::gas_stations_car_wash, 0.18,
     {"{} Gas Station", "{} Car Wash", "{} Fuel Stop"}},
    {NameTag::office_area, 0.12,
     {"{} Office Tower, Suite #", "{} Business Park", "{} Corporate Center"}},
    {NameTag::individual_store, 0.20,
     {"{} Grocery Store", "{} Liquor Shop", "{} Market", "{} Pharmacy"}},
    {NameTag::null_data, 0.10, {""}},
};

double quantize6(double v) { return std::round(v * 1e6) / 1e6; }

double clamp_pct(double v) { return std::min(100.0, std::max(0.0, v)); }

std::string county_name(int index) {
    const auto& names = kPlaceNames;
    std::string base = names[static_cast<size_t>(index) % names.size()];
    if (index >= static_cast<int>(names.size())) {
        base += std::to_string(index / static_cast<int>(names.size()) + 1);
    }
    return base + " County";
}

std::string render_address(const char* tmpl, const std::string& place, Rng& rng) {
    std::string out;
    for (const char* p = tmpl; *p; ++p) {
        if (*p == '{' && *(p + 1) == '}') {
            out += place;
            ++p;
        } else if (*p == '#') {
            out += std::to_string(rng.uniform_int(1, 999));
        } else {
            out.push_back(*p);
        }
    }
    return out;
}

// Planted feature columns rise (pct_not_earning falls) with the wealth tier
// u in [0,1]; noise is small next to the per-tier step so per-county k-means
// can recover the tiers.
std::vector<double> planted_features(double u, Rng& rng) {
    std::vector<double> f(12);
    f[0] = std::max(0.0, 500.0 + 9500.0 * u + rng.normal(0, 150.0));        // population_density
    f[1] = std::max(0.0, 30000.0 + 90000.0 * u + rng.normal(0, 1500.0));    // median_household_income
    f[2] = clamp_pct(45.0 - 30.0 * u + rng.normal(0, 0.8));                 // pct_not_earning
    f[3] = clamp_pct(5.0 + 40.0 * u + rng.normal(0, 0.8));                  // transportation_pct
    f[4] = clamp_pct(40.0 + 35.0 * u + rng.normal(0, 0.8));                 // employment_pct
    f[5] = clamp_pct(2.0 + 30.0 * u + rng.normal(0, 0.7));                  // private_primary_school_pct
    f[6] = std::max(0.0, 150000.0 + 600000.0 * u + rng.normal(0, 12000.0)); // median_home_value
    f[7] = clamp_pct(5.0 + 35.0 * u + rng.normal(0, 0.8));                  // rented_1br_pct
    f[8] = clamp_pct(20.0 + 55.0 * u + rng.normal(0, 1.0));                 // educated_pct
    f[9] = clamp_pct(35.0 + 40.0 * u + rng.normal(0, 0.9));                 // earning_pct
    f[10] = clamp_pct(10.0 + 30.0 * u + rng.normal(0, 0.8));                // single_pct
    f[11] = clamp_pct(5.0 + 25.0 * u + rng.normal(0, 0.7));                 // single_with_roommates_pct
    return f;
}

std::vector<double> unplanted_features(Rng& rng) {
    std::vector<double> f(12);
    f[0] = rng.uniform(100.0, 10000.0);
    f[1] = rng.uniform(25000.0, 125000.0);
    for (int i = 2; i <= 5; ++i) f[static_cast<size_t>(i)] = rng.uniform(0.0, 100.0);
    f[6] = rng.uniform(100000.0, 800000.0);
    for (int i = 7; i <= 11; ++i) f[static_cast<size_t>(i)] = rng.uniform(0.0, 100.0);
    return f;
}

// Exact-total allocation: largest-remainder apportionment of `total` over
// `weights`, then the count multiset is handed out in weight order so counts
// never decrease as the weight grows.
std::vector<int> monotone_allocation(const std::vector<double>& weights, int total,
                                     bool monotone) {
    const size_t n = weights.size();
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<int> counts(n, 0);
    std::vector<std::pair<double, size_t>> remainders(n);
    int assigned = 0;
    for (size_t i = 0; i < n; ++i) {
        double ideal = sum > 0.0 ? total * weights[i] / sum : static_cast<double>(total) / n;
        counts[i] = static_cast<int>(std::floor(ideal));
        assigned += counts[i];
        remainders[i] = {ideal - counts[i], i};
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int i = 0; i < total - assigned; ++i) {
        ++counts[remainders[static_cast<size_t>(i) % n].second];
    }
    if (!monotone) return counts;

    std::vector<size_t> by_weight(n);
    std::iota(by_weight.begin(), by_weight.end(), 0);
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](size_t a, size_t b) { return weights[a] < weights[b]; });
    std::sort(counts.begin(), counts.end());
    std::vector<int> out(n, 0);
    for (size_t rank = 0; rank < n; ++rank) out[by_weight[rank]] = counts[rank];
    return out;
}

}  // namespace

SynthData generate_synthetic_data(const SynthConfig& config, uint64_t seed) {
    if (config.counties < 1 || config.zipcodes < 1) {
        throw ValidationError(kModule, "config: zipcode and county counts must be positive");
    }
    if (config.counties > config.zipcodes) {
        throw ValidationError(kModule, "config: county count " + std::to_string(config.counties) +
                                           " exceeds zipcode count " +
                                           std::to_string(config.zipcodes));
    }
    if (config.zipcodes > 10000) {
        throw ValidationError(kModule, "config: at most 10000 zipcodes supported");
    }
    if (config.atms < 0 || config.extra_features < 0) {
        throw ValidationError(kModule, "config: counts must be nonnegative");
    }

    SynthData out;
    Dataset& ds = out.dataset;
    ds.feature_names = canonical_feature_columns();
    for (int i = 0; i < config.extra_features; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "f_%02d", i);
        ds.feature_names.emplace_back(buf);
    }

    const int base = config.zipcodes / config.counties;
    const int rem = config.zipcodes % config.counties;
    int zip_index = 0;
    for (int c = 0; c < config.counties; ++c) {
        const int n_c = base + (c < rem ? 1 : 0);
        Rng rng(derive_seed(seed, "synth_county", static_cast<uint64_t>(c)));
        const double center_lat = rng.uniform(33.0, 41.5);
        const double center_lon = rng.uniform(-124.0, -115.0);
        const std::string county = county_name(c);
        for (int i = 0; i < n_c; ++i, ++zip_index) {
            ZipcodeRecord rec;
            rec.zipcode = std::to_string(90000 + zip_index);
            rec.county = county;
            rec.latitude = quantize6(std::clamp(center_lat + rng.normal(0, 0.15), -90.0, 90.0));
            rec.longitude = quantize6(std::clamp(center_lon + rng.normal(0, 0.15), -180.0, 180.0));
            std::vector<double> named;
            if (config.planted) {
                const int tier = i % kTiers;
                const double u = std::clamp(tier / 6.0 + rng.normal(0, 0.02), 0.0, 1.0);
                named = planted_features(u, rng);
            } else {
                named = unplanted_features(rng);
            }
            rec.features.reserve(ds.feature_names.size());
            for (double v : named) rec.features.push_back(quantize6(v));
            for (int e = 0; e < config.extra_features; ++e) {
                rec.features.push_back(quantize6(std::exp(rng.normal(3.0, 0.6))));
            }
            ds.records.push_back(std::move(rec));
        }
    }

    // Wealth estimate from the realized table: min-max scaled density and
    // income, not-earning share as a fraction.
    const size_t n = ds.records.size();
    double pd_lo = ds.records[0].features[0], pd_hi = pd_lo;
    double mhi_lo = ds.records[0].features[1], mhi_hi = mhi_lo;
    for (const auto& rec : ds.records) {
        pd_lo = std::min(pd_lo, rec.features[0]);
        pd_hi = std::max(pd_hi, rec.features[0]);
        mhi_lo = std::min(mhi_lo, rec.features[1]);
        mhi_hi = std::max(mhi_hi, rec.features[1]);
    }
    out.wealth_estimate.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& f = ds.records[i].features;
        double pd = pd_hi > pd_lo ? (f[0] - pd_lo) / (pd_hi - pd_lo) : 0.0;
        double mhi = mhi_hi > mhi_lo ? (f[1] - mhi_lo) / (mhi_hi - mhi_lo) : 0.0;
        out.wealth_estimate[i] = pd * mhi * (1.0 - f[2] / 100.0);
    }

    std::vector<double> weights(n);
    Rng atm_rng(derive_seed(seed, "synth_atms", 0));
    for (size_t i = 0; i < n; ++i) {
        weights[i] = config.planted ? 0.25 + out.wealth_estimate[i]
                                    : atm_rng.uniform(0.5, 1.5);
    }
    out.atm_counts = monotone_allocation(weights, config.atms, config.planted);

    // Per-county network popularity, so rankings differ across counties.
    std::vector<std::vector<double>> county_network_weights(
        static_cast<size_t>(config.counties));
    for (int c = 0; c < config.counties; ++c) {
        Rng wrng(derive_seed(seed, "synth_networks", static_cast<uint64_t>(c)));
        auto& w = county_network_weights[static_cast<size_t>(c)];
        w.resize(kNetworks.size());
        for (auto& v : w) {
            double u = wrng.uniform(0.5, 1.5);
            v = u * u;
        }
    }
    std::vector<double> class_weights;
    for (const auto& vc : kVenueClasses) class_weights.push_back(vc.probability);

    std::vector<int> county_of_zip(n);
    {
        int zi = 0;
        for (int c = 0; c < config.counties; ++c) {
            const int n_c = base + (c < rem ? 1 : 0);
            for (int i = 0; i < n_c; ++i) county_of_zip[static_cast<size_t>(zi++)] = c;
        }
    }
    for (size_t z = 0; z < n; ++z) {
        const auto& rec = ds.records[z];
        const auto& net_weights = county_network_weights[static_cast<size_t>(county_of_zip[z])];
        std::string city = rec.county.substr(0, rec.county.size() - 7) + " City";
        for (int j = 0; j < out.atm_counts[z]; ++j) {
            AtmRecord atm;
            atm.network = kNetworks[atm_rng.weighted_index(net_weights)];
            const auto& venue = kVenueClasses[atm_rng.weighted_index(class_weights)];
            const std::string& place =
                kPlaceNames[static_cast<size_t>(atm_rng.below(kPlaceNames.size()))];
            const char* tmpl =
                venue.templates[static_cast<size_t>(atm_rng.below(venue.templates.size()))];
            atm.street_address = render_address(tmpl, place, atm_rng);
            atm.city = city;
            atm.zipcode = rec.zipcode;
            auto [tag, score] = classify_name_tag(atm.street_address);
            atm.name_tag = tag;
            atm.relative_score = score;
            out.atms.push_back(std::move(atm));
        }
    }
    return out;
}

void generate_synthetic(const SynthConfig& config, uint64_t seed,
                        const std::filesystem::path& zipcode_path,
                        const std::filesystem::path& atm_path) {
    SynthData data = generate_synthetic_data(config, seed);
    write_zipcodes(zipcode_path, data.dataset);
    write_atms(atm_path, data.atms);
}

}  // namespace atmscore
