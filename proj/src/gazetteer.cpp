#include "namebias/gazetteer.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "namebias/common.hpp"
#include "namebias/text.hpp"

namespace namebias {

namespace fs = std::filesystem;

std::string_view to_string(EntityKind k) {
    switch (k) {
        case EntityKind::Person: return "person";
        case EntityKind::Country: return "country";
        case EntityKind::CityOrRegion: return "city-or-region";
        case EntityKind::Organization: return "organization";
    }
    return "unknown";
}

namespace {

int precedence(EntityKind k) {
    switch (k) {
        case EntityKind::Person: return 0;
        case EntityKind::Country: return 1;
        case EntityKind::CityOrRegion: return 2;
        case EntityKind::Organization: return 3;
    }
    return 4;
}

std::string first_token(std::string_view entry) {
    std::size_t end = 0;
    while (end < entry.size()) {
        std::size_t next = end;
        if (!text::is_letter(text::decode_at(entry, next))) break;
        end = next;
    }
    return std::string(entry.substr(0, end));
}

std::vector<std::string> read_name_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot open name list: " + path);
    }
    std::vector<std::string> names;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string entry = text::trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        if (seen.insert(entry).second) {
            names.push_back(std::move(entry));
        }
    }
    if (names.empty()) {
        throw config_error("name list has no entries: " + path);
    }
    return names;
}

}  // namespace

void Gazetteer::index_pool(const std::vector<std::string>& pool, EntityKind kind) {
    for (const auto& name : pool) {
        auto [it, inserted] = kind_of_.emplace(name, kind);
        if (!inserted) {
            if (precedence(kind) < precedence(it->second)) it->second = kind;
            std::cerr << "[namebias] warning: \"" << name << "\" is in several pools; "
                      << "treating it as " << to_string(it->second) << "\n";
        }
    }
}

void Gazetteer::finalize_index() {
    index_.clear();
    for (const auto& [name, kind] : kind_of_) {
        index_[first_token(name)].push_back(Entry{&name, kind});
    }
    for (auto& [token, entries] : index_) {
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.name->size() != b.name->size()) return a.name->size() > b.name->size();
            return *a.name < *b.name;
        });
    }
}

Gazetteer Gazetteer::from_pools(std::vector<std::string> persons,
                                std::vector<std::string> countries,
                                std::map<std::string, std::vector<std::string>> per_country,
                                std::vector<std::string> cities,
                                std::vector<std::string> organizations) {
    Gazetteer g;
    g.persons_ = std::move(persons);
    g.countries_ = std::move(countries);
    g.per_country_ = std::move(per_country);
    g.cities_ = std::move(cities);
    g.organizations_ = std::move(organizations);
    g.index_pool(g.persons_, EntityKind::Person);
    g.index_pool(g.countries_, EntityKind::Country);
    g.index_pool(g.cities_, EntityKind::CityOrRegion);
    g.index_pool(g.organizations_, EntityKind::Organization);
    g.finalize_index();
    return g;
}

const std::vector<std::string>& Gazetteer::pool(EntityKind k) const {
    switch (k) {
        case EntityKind::Person: return persons_;
        case EntityKind::Country: return countries_;
        case EntityKind::CityOrRegion: return cities_;
        case EntityKind::Organization: return organizations_;
    }
    return persons_;
}

bool Gazetteer::pool_contains(EntityKind k, std::string_view name) const {
    const auto& p = pool(k);
    return std::find(p.begin(), p.end(), name) != p.end();
}

bool Gazetteer::lookup_kind(std::string_view surface, EntityKind& kind_out) const {
    auto it = kind_of_.find(std::string(surface));
    if (it == kind_of_.end()) return false;
    kind_out = it->second;
    return true;
}

Gazetteer load_gazetteer(const GazetteerPaths& paths) {
    auto persons = read_name_file(paths.person_list);
    auto countries = read_name_file(paths.country_list);

    std::map<std::string, std::vector<std::string>> per_country;
    if (!paths.per_country_dir.empty()) {
        if (!fs::is_directory(paths.per_country_dir)) {
            throw config_error("per-country directory missing: " + paths.per_country_dir);
        }
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(paths.per_country_dir)) {
            if (e.is_regular_file() && e.path().extension() == ".txt") {
                files.push_back(e.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            per_country[f.stem().string()] = read_name_file(f.string());
        }
    }

    std::vector<std::string> cities, organizations;
    if (!paths.city_region_list.empty()) cities = read_name_file(paths.city_region_list);
    if (!paths.organization_list.empty()) {
        organizations = read_name_file(paths.organization_list);
    }

    vlog("gazetteer: " + std::to_string(persons.size()) + " person, " +
         std::to_string(countries.size()) + " country, " + std::to_string(cities.size()) +
         " city/region, " + std::to_string(organizations.size()) + " organization names, " +
         std::to_string(per_country.size()) + " per-country pools");

    return Gazetteer::from_pools(std::move(persons), std::move(countries),
                                 std::move(per_country), std::move(cities),
                                 std::move(organizations));
}

Gazetteer load_gazetteer(const std::string& person_list_path,
                         const std::string& country_list_path,
                         const std::string& per_country_dir) {
    GazetteerPaths p;
    p.person_list = person_list_path;
    p.country_list = country_list_path;
    p.per_country_dir = per_country_dir;
    return load_gazetteer(p);
}

std::vector<EntityMention> find_mentions(std::string_view str, const Gazetteer& g,
                                         const std::set<EntityKind>& kinds) {
    std::vector<EntityMention> mentions;
    std::size_t pos = 0;
    while (pos < str.size()) {
        const std::size_t start = pos;
        const char32_t cp = text::decode_at(str, pos);
        if (!text::is_letter(cp) || !text::boundary_before(str, start)) continue;

        // Maximal letter run starting here (the current token).
        std::size_t token_end = pos;
        while (token_end < str.size()) {
            std::size_t next = token_end;
            if (!text::is_letter(text::decode_at(str, next))) break;
            token_end = next;
        }

        const std::string token(str.substr(start, token_end - start));
        const auto it = g.index_.find(token);
        const Gazetteer::Entry* hit = nullptr;
        if (it != g.index_.end()) {
            for (const auto& entry : it->second) {  // longest first
                if (!kinds.contains(entry.kind)) continue;
                if (str.substr(start, entry.name->size()) != *entry.name) continue;
                if (!text::boundary_after(str, start + entry.name->size())) continue;
                hit = &entry;
                break;
            }
        }

        if (hit != nullptr) {
            EntityMention m;
            m.kind = hit->kind;
            m.span = ByteSpan{start, start + hit->name->size()};
            m.surface = *hit->name;
            m.canonical_key = m.surface;
            if (m.canonical_key.size() > 2 && m.canonical_key.ends_with("'s")) {
                m.canonical_key.resize(m.canonical_key.size() - 2);
            }
            pos = m.span.end;
            mentions.push_back(std::move(m));
        } else {
            pos = token_end;
        }
    }
    return mentions;
}

std::vector<std::string> distinct_keys(const std::vector<EntityMention>& mentions,
                                       EntityKind kind) {
    std::vector<std::string> keys;
    std::unordered_set<std::string> seen;
    for (const auto& m : mentions) {
        if (m.kind != kind) continue;
        if (seen.insert(m.canonical_key).second) {
            keys.push_back(m.canonical_key);
        }
    }
    return keys;
}

}  // namespace namebias
