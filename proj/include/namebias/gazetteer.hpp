#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace namebias {

enum class EntityKind { Person, Country, CityOrRegion, Organization };

std::string_view to_string(EntityKind k);

struct ByteSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // half-open

    bool operator==(const ByteSpan&) const = default;
};

// One located occurrence of a gazetteer entry in a text.
struct EntityMention {
    EntityKind kind = EntityKind::Person;
    std::string surface;        // exact bytes covered by span
    ByteSpan span;
    std::string canonical_key;  // surface with a possessive suffix stripped
};

struct GazetteerPaths {
    std::string person_list;
    std::string country_list;
    std::string per_country_dir;    // optional
    std::string city_region_list;   // optional
    std::string organization_list;  // optional
};

// Immutable name lexicons plus the matching index built over them. A surface
// appearing in several pools is assigned one kind by precedence
// Person > Country > CityOrRegion > Organization (overlaps are logged).
class Gazetteer {
  public:
    static Gazetteer from_pools(
        std::vector<std::string> persons, std::vector<std::string> countries,
        std::map<std::string, std::vector<std::string>> per_country = {},
        std::vector<std::string> cities = {}, std::vector<std::string> organizations = {});

    const std::vector<std::string>& pool(EntityKind k) const;
    const std::map<std::string, std::vector<std::string>>& per_country_person_names() const {
        return per_country_;
    }

    bool pool_contains(EntityKind k, std::string_view name) const;
    // Kind assigned to a surface by precedence, if it is in any pool.
    bool lookup_kind(std::string_view surface, EntityKind& kind_out) const;

  private:
    friend std::vector<EntityMention> find_mentions(std::string_view,
                                                    const Gazetteer&,
                                                    const std::set<EntityKind>&);

    struct Entry {
        const std::string* name = nullptr;
        EntityKind kind = EntityKind::Person;
    };

    void index_pool(const std::vector<std::string>& pool, EntityKind kind);
    void finalize_index();

    std::vector<std::string> persons_, countries_, cities_, organizations_;
    std::map<std::string, std::vector<std::string>> per_country_;
    // first token of an entry -> entries, longest first
    std::unordered_map<std::string, std::vector<Entry>> index_;
    std::unordered_map<std::string, EntityKind> kind_of_;
};

// Loads pools from one-entry-per-line UTF-8 files ("#" lines are comments).
// Every present file must yield a non-empty pool; duplicates are dropped.
Gazetteer load_gazetteer(const GazetteerPaths& paths);
Gazetteer load_gazetteer(const std::string& person_list_path,
                         const std::string& country_list_path,
                         const std::string& per_country_dir = {});

// All maximal, case-sensitive, word-boundary occurrences of pool entries of
// the requested kinds; left-to-right, longest match wins, non-overlapping,
// sorted by span start.
std::vector<EntityMention> find_mentions(std::string_view text, const Gazetteer& g,
                                         const std::set<EntityKind>& kinds);

// Unique canonical keys of the given kind in order of first appearance.
std::vector<std::string> distinct_keys(const std::vector<EntityMention>& mentions,
                                       EntityKind kind);

}  // namespace namebias
