#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace atmscore {

// Venue categories assigned from an ATM's street address, ordered by the
// relative daily-visitor score they carry (10 down to 4).
enum class NameTag {
    shopping_malls,
    banks_exchange_centre,
    recreation_centre,
    gas_stations_car_wash,
    office_area,
    individual_store,
    null_data,
};

constexpr int kNameTagCount = 7;

int relative_score(NameTag tag);
const char* name_tag_label(NameTag tag);

// Keyword lists per class, checked in descending relative-score order so a
// "Bank inside Westfield Mall" resolves to the mall. Matching is
// case-insensitive on word tokens; multi-word keywords must appear as
// consecutive tokens.
class KeywordTable {
public:
    static KeywordTable defaults();
    // Flat "class = keyword, keyword, ..." text, '#' comments. Classes not
    // mentioned keep no keywords.
    static KeywordTable load(const std::filesystem::path& path);

    const std::vector<std::string>& keywords(NameTag tag) const { return keywords_[static_cast<size_t>(tag)]; }
    void set_keywords(NameTag tag, std::vector<std::string> words);

private:
    std::vector<std::string> keywords_[kNameTagCount];
};

std::pair<NameTag, int> classify_name_tag(const std::string& street_address);
std::pair<NameTag, int> classify_name_tag(const std::string& street_address,
                                          const KeywordTable& table);

struct ZipcodeRecord {
    std::string zipcode;  // exactly 5 digits
    std::string county;
    double latitude = 0.0;
    double longitude = 0.0;
    std::vector<double> features;  // aligned with Dataset::feature_names
    std::string nearest_zipcodes;  // optional pass-through column, unused by models

    bool operator==(const ZipcodeRecord&) const = default;
};

struct Dataset {
    std::vector<std::string> feature_names;  // column order as ingested
    std::vector<ZipcodeRecord> records;      // row order as ingested

    int feature_index(const std::string& name) const;
    double feature(size_t row, const std::string& name) const;
    // zipcode -> county for every record
    std::map<std::string, std::string> zip_to_county() const;
};

// The 12 numeric columns every zipcodes.csv must carry, in schema order.
const std::vector<std::string>& canonical_feature_columns();

struct AtmRecord {
    std::string network;
    std::string street_address;
    std::string city;
    std::string zipcode;
    NameTag name_tag = NameTag::null_data;
    int relative_score = 4;

    bool operator==(const AtmRecord&) const = default;
};

struct AtmLoadResult {
    std::vector<AtmRecord> records;
    int rejected_count = 0;  // rows whose zipcode is not in the zipcode table
};

Dataset load_zipcodes(const std::filesystem::path& path);
AtmLoadResult load_atms(const std::filesystem::path& path, const Dataset& zipcodes);
AtmLoadResult load_atms(const std::filesystem::path& path, const Dataset& zipcodes,
                        const KeywordTable& keywords);

void write_zipcodes(const std::filesystem::path& path, const Dataset& dataset);
void write_atms(const std::filesystem::path& path, const std::vector<AtmRecord>& atms);

// Min-max scaled copy of the feature matrix with the scaling parameters
// retained so the transform is replayable. Constant columns map to 0.
struct NormalizedTable {
    std::vector<std::string> feature_names;
    std::vector<std::string> zipcodes;  // row keys, ingestion order
    std::vector<std::string> counties;
    std::vector<std::vector<double>> raw;
    std::vector<std::vector<double>> normalized;
    std::vector<double> feature_min;
    std::vector<double> feature_max;

    size_t rows() const { return normalized.size(); }
    size_t cols() const { return feature_names.size(); }
    int column(const std::string& name) const;
    std::vector<double> apply(const std::vector<double>& raw_row) const;
    // row indices per county, keyed in sorted county order
    std::map<std::string, std::vector<size_t>> county_rows() const;
};

NormalizedTable normalize_features(const Dataset& dataset);

struct FrequencyIndex {
    std::map<std::string, int> by_zip;
    std::map<std::pair<std::string, std::string>, int> by_zip_network;  // (zipcode, network)

    int total() const;
    int count(const std::string& zipcode, const std::string& network) const;
};

FrequencyIndex atm_frequency(const std::vector<AtmRecord>& atms);

}  // namespace atmscore
