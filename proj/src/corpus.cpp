#include "namebias/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "namebias/common.hpp"
#include "namebias/text.hpp"

namespace namebias {

namespace fs = std::filesystem;
using nlohmann::json;

CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "tsv") return CorpusFormat::TsvIdText;
    if (name == "jsonl") return CorpusFormat::Jsonl;
    if (name == "plain-dir") return CorpusFormat::PlainDir;
    throw config_error("unknown corpus format: " + std::string(name) +
                       " (expected tsv, jsonl or plain-dir)");
}

namespace {

void push_sample(Corpus& corpus, std::string id, std::string body, std::size_t row) {
    if (body.empty()) {
        std::cerr << "[namebias] warning: skipping record " << row << " (empty text)\n";
        return;
    }
    TextSample s;
    s.id = id.empty() ? "row-" + std::to_string(row) : std::move(id);
    s.word_count = text::word_count(body);
    s.text = std::move(body);
    corpus.samples.push_back(std::move(s));
}

Corpus load_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open corpus: " + path);
    Corpus corpus;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            std::cerr << "[namebias] warning: skipping record " << row << " (no tab)\n";
            continue;
        }
        push_sample(corpus, line.substr(0, tab), line.substr(tab + 1), row);
    }
    return corpus;
}

Corpus load_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open corpus: " + path);
    Corpus corpus;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (text::trim(line).empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("text") ||
            !rec["text"].is_string()) {
            std::cerr << "[namebias] warning: skipping record " << row
                      << " (malformed JSON record)\n";
            continue;
        }
        std::string id;
        if (rec.contains("id") && rec["id"].is_string()) id = rec["id"].get<std::string>();
        push_sample(corpus, std::move(id), rec["text"].get<std::string>(), row);
    }
    return corpus;
}

Corpus load_plain_dir(const std::string& path) {
    if (!fs::is_directory(path)) throw config_error("not a directory: " + path);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    Corpus corpus;
    std::size_t row = 0;
    for (const auto& f : files) {
        ++row;
        std::ifstream in(f, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        push_sample(corpus, f.stem().string(), body.str(), row);
    }
    return corpus;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    Corpus corpus;
    switch (format) {
        case CorpusFormat::TsvIdText: corpus = load_tsv(path); break;
        case CorpusFormat::Jsonl: corpus = load_jsonl(path); break;
        case CorpusFormat::PlainDir: corpus = load_plain_dir(path); break;
    }
    corpus.source_name = path;
    if (corpus.samples.empty()) {
        throw config_error("no usable records in corpus: " + path);
    }
    vlog("corpus " + path + ": " + std::to_string(corpus.samples.size()) + " samples");
    return corpus;
}

Corpus filter_word_count(const Corpus& corpus, std::size_t max_words) {
    if (max_words == 0) throw config_error("max_words must be positive");
    Corpus out;
    out.source_name = corpus.source_name;
    for (const auto& s : corpus.samples) {
        if (s.word_count < max_words) out.samples.push_back(s);
    }
    return out;
}

Corpus filter_entity_profile(const Corpus& corpus, const Gazetteer& gazetteer,
                             bool require_person, bool require_country,
                             const std::vector<std::string>& exclusion_lexicon) {
    Corpus out;
    out.source_name = corpus.source_name;
    const std::set<EntityKind> kinds{EntityKind::Person, EntityKind::Country};
    for (const auto& s : corpus.samples) {
        const auto mentions = find_mentions(s.text, gazetteer, kinds);
        const bool has_person = std::any_of(mentions.begin(), mentions.end(), [](const auto& m) {
            return m.kind == EntityKind::Person;
        });
        const bool has_country = std::any_of(mentions.begin(), mentions.end(), [](const auto& m) {
            return m.kind == EntityKind::Country;
        });
        if (require_person && !has_person) continue;
        if (require_country && !has_country) continue;
        const bool excluded =
            std::any_of(exclusion_lexicon.begin(), exclusion_lexicon.end(),
                        [&](const std::string& term) { return text::contains_word(s.text, term); });
        if (excluded) continue;
        out.samples.push_back(s);
    }
    return out;
}

std::vector<std::string> load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open lexicon: " + path);
    std::vector<std::string> terms;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string entry = text::trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        if (seen.insert(entry).second) terms.push_back(std::move(entry));
    }
    return terms;
}

}  // namespace namebias
