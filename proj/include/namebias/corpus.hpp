#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "namebias/gazetteer.hpp"

namespace namebias {

struct TextSample {
    std::string id;
    std::string text;
    std::size_t word_count = 0;
};

struct Corpus {
    std::vector<TextSample> samples;
    std::string source_name;
};

enum class CorpusFormat { TsvIdText, Jsonl, PlainDir };

CorpusFormat parse_corpus_format(std::string_view name);  // "tsv" | "jsonl" | "plain-dir"

// One sample per record; malformed records are warned about and skipped;
// zero usable records is an error. Missing ids become "row-<n>".
Corpus load_corpus(const std::string& path, CorpusFormat format);

// Retains samples whose word count is strictly below `max_words`.
Corpus filter_word_count(const Corpus& corpus, std::size_t max_words = 250);

// Retains samples that have the required entity mentions and contain no
// word-boundary occurrence of any exclusion-lexicon entry.
Corpus filter_entity_profile(const Corpus& corpus, const Gazetteer& gazetteer,
                             bool require_person, bool require_country,
                             const std::vector<std::string>& exclusion_lexicon);

// One entry per line, "#" comments ignored; empty result allowed.
std::vector<std::string> load_lexicon(const std::string& path);

}  // namespace namebias
