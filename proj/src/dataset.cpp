#include "atmscore/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "atmscore/csv.hpp"
#include "atmscore/errors.hpp"

namespace atmscore {

namespace {

constexpr const char* kModule = "dataset";

const NameTag kTagsByScoreDesc[kNameTagCount] = {
    NameTag::shopping_malls,        NameTag::banks_exchange_centre,
    NameTag::recreation_centre,     NameTag::gas_stations_car_wash,
    NameTag::office_area,           NameTag::individual_store,
    NameTag::null_data,
};

std::vector<std::string> tokenize_lower(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

bool tokens_contain(const std::vector<std::string>& tokens,
                    const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    for (size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool all = true;
        for (size_t j = 0; j < phrase.size(); ++j) {
            if (tokens[i + j] != phrase[j]) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_percentage_column(const std::string& name) {
    if (name == "pct_not_earning") return true;
    return name.size() > 4 && name.compare(name.size() - 4, 4, "_pct") == 0;
}

bool is_extra_feature_column(const std::string& name) {
    return name.size() > 2 && name.compare(0, 2, "f_") == 0;
}

bool valid_zipcode(const std::string& z) {
    if (z.size() != 5) return false;
    return std::all_of(z.begin(), z.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

double parse_cell(const std::string& cell, const std::string& column, size_t file_row) {
    bool ok = false;
    double v = parse_double(trim(cell), ok);
    if (!ok || !std::isfinite(v)) {
        throw ValidationError(kModule, "row " + std::to_string(file_row) +
                                           ": non-numeric value '" + cell +
                                           "' in column '" + column + "'");
    }
    return v;
}

}  // namespace

int relative_score(NameTag tag) {
    switch (tag) {
        case NameTag::shopping_malls: return 10;
        case NameTag::banks_exchange_centre: return 9;
        case NameTag::recreation_centre: return 8;
        case NameTag::gas_stations_car_wash: return 7;
        case NameTag::office_area: return 6;
        case NameTag::individual_store: return 5;
        case NameTag::null_data: return 4;
    }
    return 4;
}

const char* name_tag_label(NameTag tag) {
    switch (tag) {
        case NameTag::shopping_malls: return "Shopping Malls";
        case NameTag::banks_exchange_centre: return "Banks/Exchange Centre";
        case NameTag::recreation_centre: return "Recreation Centre";
        case NameTag::gas_stations_car_wash: return "Gas Stations/Car wash";
        case NameTag::office_area: return "Office Area";
        case NameTag::individual_store: return "Individual Store";
        case NameTag::null_data: return "Null Data";
    }
    return "Null Data";
}

KeywordTable KeywordTable::defaults() {
    KeywordTable t;
    t.set_keywords(NameTag::shopping_malls,
                   {"mall", "shopping center", "shopping centre", "plaza", "outlet", "galleria"});
    t.set_keywords(NameTag::banks_exchange_centre,
                   {"bank", "credit union", "exchange", "savings", "bancorp"});
    t.set_keywords(NameTag::recreation_centre,
                   {"recreation", "gym", "fitness", "stadium", "arena", "cinema", "theater",
                    "theatre", "casino"});
    t.set_keywords(NameTag::gas_stations_car_wash,
                   {"gas station", "car wash", "carwash", "fuel", "petrol", "service station"});
    t.set_keywords(NameTag::office_area,
                   {"office", "tower", "suite", "business park", "corporate", "headquarters"});
    t.set_keywords(NameTag::individual_store,
                   {"store", "shop", "market", "grocery", "deli", "pharmacy", "liquor", "mart"});
    return t;
}

void KeywordTable::set_keywords(NameTag tag, std::vector<std::string> words) {
    keywords_[static_cast<size_t>(tag)] = std::move(words);
}

KeywordTable KeywordTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(kModule, "cannot open keyword table " + path.string());
    }
    static const std::map<std::string, NameTag> kClassKeys = {
        {"shopping_malls", NameTag::shopping_malls},
        {"banks_exchange_centre", NameTag::banks_exchange_centre},
        {"recreation_centre", NameTag::recreation_centre},
        {"gas_stations_car_wash", NameTag::gas_stations_car_wash},
        {"office_area", NameTag::office_area},
        {"individual_store", NameTag::individual_store},
        {"null_data", NameTag::null_data},
    };
    KeywordTable t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(kModule, path.string() + " line " + std::to_string(lineno) +
                                               ": expected 'class = keyword, ...'");
        }
        std::string key = trim(s.substr(0, eq));
        auto it = kClassKeys.find(key);
        if (it == kClassKeys.end()) {
            throw ValidationError(kModule, path.string() + " line " + std::to_string(lineno) +
                                               ": unknown name-tag class '" + key + "'");
        }
        std::vector<std::string> words;
        std::stringstream list(s.substr(eq + 1));
        std::string word;
        while (std::getline(list, word, ',')) {
            word = trim(word);
            if (!word.empty()) words.push_back(word);
        }
        t.set_keywords(it->second, std::move(words));
    }
    return t;
}

std::pair<NameTag, int> classify_name_tag(const std::string& street_address) {
    static const KeywordTable defaults = KeywordTable::defaults();
    return classify_name_tag(street_address, defaults);
}

std::pair<NameTag, int> classify_name_tag(const std::string& street_address,
                                          const KeywordTable& table) {
    const auto tokens = tokenize_lower(street_address);
    if (!tokens.empty()) {
        for (NameTag tag : kTagsByScoreDesc) {
            for (const std::string& keyword : table.keywords(tag)) {
                if (tokens_contain(tokens, tokenize_lower(keyword))) {
                    return {tag, relative_score(tag)};
                }
            }
        }
    }
    return {NameTag::null_data, relative_score(NameTag::null_data)};
}

const std::vector<std::string>& canonical_feature_columns() {
    static const std::vector<std::string> cols = {
        "population_density",
        "median_household_income",
        "pct_not_earning",
        "transportation_pct",
        "employment_pct",
        "private_primary_school_pct",
        "median_home_value",
        "rented_1br_pct",
        "educated_pct",
        "earning_pct",
        "single_pct",
        "single_with_roommates_pct",
    };
    return cols;
}

int Dataset::feature_index(const std::string& name) const {
    for (size_t i = 0; i < feature_names.size(); ++i) {
        if (feature_names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

double Dataset::feature(size_t row, const std::string& name) const {
    int idx = feature_index(name);
    if (idx < 0) {
        throw SchemaError(kModule, "unknown feature column '" + name + "'");
    }
    return records[row].features[static_cast<size_t>(idx)];
}

std::map<std::string, std::string> Dataset::zip_to_county() const {
    std::map<std::string, std::string> m;
    for (const auto& rec : records) m[rec.zipcode] = rec.county;
    return m;
}

Dataset load_zipcodes(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw IoError(kModule, "no such file: " + path.string());
    }
    CsvTable csv = read_csv(path);

    int zip_col = csv.column("zipcode");
    int county_col = csv.column("county");
    int lat_col = csv.column("latitude");
    int lon_col = csv.column("longitude");
    for (auto [name, col] : {std::pair<const char*, int>{"zipcode", zip_col},
                             {"county", county_col},
                             {"latitude", lat_col},
                             {"longitude", lon_col}}) {
        if (col < 0) {
            throw SchemaError(kModule, path.string() + ": missing required column '" +
                                           std::string(name) + "'");
        }
    }
    for (const auto& name : canonical_feature_columns()) {
        if (csv.column(name) < 0) {
            throw SchemaError(kModule,
                              path.string() + ": missing required column '" + name + "'");
        }
    }

    Dataset ds;
    std::vector<int> feature_cols;
    int nearest_col = -1;
    std::set<std::string> seen_headers;
    for (size_t c = 0; c < csv.header.size(); ++c) {
        const std::string& name = csv.header[c];
        if (!seen_headers.insert(name).second) {
            throw SchemaError(kModule, path.string() + ": duplicate column '" + name + "'");
        }
        if (name == "zipcode" || name == "county" || name == "latitude" ||
            name == "longitude") {
            continue;
        }
        if (name == "nearest_zipcodes") {
            nearest_col = static_cast<int>(c);
            continue;
        }
        bool canonical = std::find(canonical_feature_columns().begin(),
                                   canonical_feature_columns().end(),
                                   name) != canonical_feature_columns().end();
        if (!canonical && !is_extra_feature_column(name)) {
            throw SchemaError(kModule, path.string() + ": unknown column '" + name +
                                           "' (extra features must be named f_*)");
        }
        ds.feature_names.push_back(name);
        feature_cols.push_back(static_cast<int>(c));
    }

    std::set<std::string> seen_zipcodes;
    ds.records.reserve(csv.rows.size());
    for (size_t r = 0; r < csv.rows.size(); ++r) {
        const size_t file_row = r + 2;  // header is row 1
        const auto& row = csv.rows[r];
        if (row.size() != csv.header.size()) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": expected " + std::to_string(csv.header.size()) +
                                               " fields, got " + std::to_string(row.size()));
        }
        ZipcodeRecord rec;
        rec.zipcode = trim(row[static_cast<size_t>(zip_col)]);
        if (!valid_zipcode(rec.zipcode)) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": zipcode '" + rec.zipcode +
                                               "' is not a 5-digit code");
        }
        if (!seen_zipcodes.insert(rec.zipcode).second) {
            throw ValidationError(kModule, path.string() + ": duplicate zipcode '" +
                                               rec.zipcode + "' at row " +
                                               std::to_string(file_row));
        }
        rec.county = trim(row[static_cast<size_t>(county_col)]);
        if (rec.county.empty()) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": county must be nonempty");
        }
        rec.latitude = parse_cell(row[static_cast<size_t>(lat_col)], "latitude", file_row);
        rec.longitude = parse_cell(row[static_cast<size_t>(lon_col)], "longitude", file_row);
        if (rec.latitude < -90.0 || rec.latitude > 90.0 || rec.longitude < -180.0 ||
            rec.longitude > 180.0) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": coordinates out of range");
        }
        rec.features.resize(ds.feature_names.size());
        for (size_t f = 0; f < feature_cols.size(); ++f) {
            const std::string& name = ds.feature_names[f];
            double v = parse_cell(row[static_cast<size_t>(feature_cols[f])], name, file_row);
            if (is_percentage_column(name)) {
                if (v < 0.0 || v > 100.0) {
                    throw ValidationError(kModule, path.string() + ": row " +
                                                       std::to_string(file_row) + ": column '" +
                                                       name + "' must be in [0,100], got " +
                                                       format_general(v));
                }
            } else if (!is_extra_feature_column(name) && v < 0.0) {
                throw ValidationError(kModule, path.string() + ": row " +
                                                   std::to_string(file_row) + ": column '" +
                                                   name + "' must be nonnegative, got " +
                                                   format_general(v));
            }
            rec.features[f] = v;
        }
        if (nearest_col >= 0) {
            rec.nearest_zipcodes = row[static_cast<size_t>(nearest_col)];
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

AtmLoadResult load_atms(const std::filesystem::path& path, const Dataset& zipcodes) {
    return load_atms(path, zipcodes, KeywordTable::defaults());
}

AtmLoadResult load_atms(const std::filesystem::path& path, const Dataset& zipcodes,
                        const KeywordTable& keywords) {
    if (!std::filesystem::exists(path)) {
        throw IoError(kModule, "no such file: " + path.string());
    }
    CsvTable csv = read_csv(path);
    for (const char* name : {"network", "street_address", "city", "zipcode"}) {
        if (csv.column(name) < 0) {
            throw SchemaError(kModule,
                              path.string() + ": missing required column '" + std::string(name) + "'");
        }
    }
    if (csv.rows.empty()) {
        throw ValidationError(kModule, path.string() + ": no ATM rows");
    }
    const size_t net_col = static_cast<size_t>(csv.column("network"));
    const size_t addr_col = static_cast<size_t>(csv.column("street_address"));
    const size_t city_col = static_cast<size_t>(csv.column("city"));
    const size_t zip_col = static_cast<size_t>(csv.column("zipcode"));

    std::set<std::string> known_zips;
    for (const auto& rec : zipcodes.records) known_zips.insert(rec.zipcode);

    AtmLoadResult result;
    result.records.reserve(csv.rows.size());
    for (size_t r = 0; r < csv.rows.size(); ++r) {
        const size_t file_row = r + 2;
        const auto& row = csv.rows[r];
        if (row.size() != csv.header.size()) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": expected " + std::to_string(csv.header.size()) +
                                               " fields, got " + std::to_string(row.size()));
        }
        AtmRecord rec;
        rec.network = trim(row[net_col]);
        if (rec.network.empty()) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": network must be nonempty");
        }
        rec.street_address = row[addr_col];
        rec.city = row[city_col];
        rec.zipcode = trim(row[zip_col]);
        if (!valid_zipcode(rec.zipcode)) {
            throw ValidationError(kModule, path.string() + ": row " + std::to_string(file_row) +
                                               ": zipcode '" + rec.zipcode +
                                               "' is not a 5-digit code");
        }
        if (known_zips.find(rec.zipcode) == known_zips.end()) {
            ++result.rejected_count;
            continue;
        }
        auto [tag, score] = classify_name_tag(rec.street_address, keywords);
        rec.name_tag = tag;
        rec.relative_score = score;
        result.records.push_back(std::move(rec));
    }
    return result;
}

void write_zipcodes(const std::filesystem::path& path, const Dataset& dataset) {
    std::vector<std::string> header = {"zipcode", "county", "latitude", "longitude"};
    header.insert(header.end(), dataset.feature_names.begin(), dataset.feature_names.end());
    bool any_nearest =
        std::any_of(dataset.records.begin(), dataset.records.end(),
                    [](const ZipcodeRecord& r) { return !r.nearest_zipcodes.empty(); });
    if (any_nearest) header.push_back("nearest_zipcodes");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(dataset.records.size());
    for (const auto& rec : dataset.records) {
        std::vector<std::string> row = {rec.zipcode, rec.county,
                                        format_fixed(rec.latitude, 6),
                                        format_fixed(rec.longitude, 6)};
        for (double v : rec.features) row.push_back(format_fixed(v, 6));
        if (any_nearest) row.push_back(rec.nearest_zipcodes);
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_atms(const std::filesystem::path& path, const std::vector<AtmRecord>& atms) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(atms.size());
    for (const auto& a : atms) {
        rows.push_back({a.network, a.street_address, a.city, a.zipcode});
    }
    write_csv(path, {"network", "street_address", "city", "zipcode"}, rows);
}

int NormalizedTable::column(const std::string& name) const {
    for (size_t i = 0; i < feature_names.size(); ++i) {
        if (feature_names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<double> NormalizedTable::apply(const std::vector<double>& raw_row) const {
    if (raw_row.size() != feature_names.size()) {
        throw DomainError(kModule, "apply: row has " + std::to_string(raw_row.size()) +
                                       " features, table has " +
                                       std::to_string(feature_names.size()));
    }
    std::vector<double> out(raw_row.size());
    for (size_t f = 0; f < raw_row.size(); ++f) {
        double range = feature_max[f] - feature_min[f];
        out[f] = range > 0.0 ? (raw_row[f] - feature_min[f]) / range : 0.0;
    }
    return out;
}

std::map<std::string, std::vector<size_t>> NormalizedTable::county_rows() const {
    std::map<std::string, std::vector<size_t>> m;
    for (size_t i = 0; i < counties.size(); ++i) m[counties[i]].push_back(i);
    return m;
}

NormalizedTable normalize_features(const Dataset& dataset) {
    if (dataset.records.empty()) {
        throw ValidationError(kModule, "normalize_features: empty dataset");
    }
    NormalizedTable t;
    t.feature_names = dataset.feature_names;
    const size_t n = dataset.records.size();
    const size_t d = dataset.feature_names.size();
    t.zipcodes.reserve(n);
    t.counties.reserve(n);
    t.raw.reserve(n);
    for (const auto& rec : dataset.records) {
        t.zipcodes.push_back(rec.zipcode);
        t.counties.push_back(rec.county);
        t.raw.push_back(rec.features);
    }
    t.feature_min.assign(d, 0.0);
    t.feature_max.assign(d, 0.0);
    for (size_t f = 0; f < d; ++f) {
        double lo = t.raw[0][f], hi = t.raw[0][f];
        for (size_t i = 1; i < n; ++i) {
            lo = std::min(lo, t.raw[i][f]);
            hi = std::max(hi, t.raw[i][f]);
        }
        t.feature_min[f] = lo;
        t.feature_max[f] = hi;
    }
    t.normalized.assign(n, std::vector<double>(d, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t f = 0; f < d; ++f) {
            double range = t.feature_max[f] - t.feature_min[f];
            t.normalized[i][f] = range > 0.0 ? (t.raw[i][f] - t.feature_min[f]) / range : 0.0;
        }
    }
    return t;
}

int FrequencyIndex::total() const {
    int sum = 0;
    for (const auto& [zip, c] : by_zip) sum += c;
    return sum;
}

int FrequencyIndex::count(const std::string& zipcode, const std::string& network) const {
    auto it = by_zip_network.find({zipcode, network});
    return it == by_zip_network.end() ? 0 : it->second;
}

FrequencyIndex atm_frequency(const std::vector<AtmRecord>& atms) {
    FrequencyIndex idx;
    for (const auto& a : atms) {
        ++idx.by_zip[a.zipcode];
        ++idx.by_zip_network[{a.zipcode, a.network}];
    }
    return idx;
}

}  // namespace atmscore
