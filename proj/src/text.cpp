#include "namebias/text.hpp"

#include <cctype>

namespace namebias::text {

char32_t decode_at(std::string_view s, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (static_cast<unsigned char>(s[i]) & 0xc0) == 0x80;
    };
    if ((b0 & 0xe0) == 0xc0 && cont(pos + 1)) {
        char32_t cp = (b0 & 0x1f) << 6 | (static_cast<unsigned char>(s[pos + 1]) & 0x3f);
        pos += 2;
        return cp;
    }
    if ((b0 & 0xf0) == 0xe0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = (b0 & 0x0f) << 12 |
                      (static_cast<unsigned char>(s[pos + 1]) & 0x3f) << 6 |
                      (static_cast<unsigned char>(s[pos + 2]) & 0x3f);
        pos += 3;
        return cp;
    }
    if ((b0 & 0xf8) == 0xf0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = (b0 & 0x07) << 18 |
                      (static_cast<unsigned char>(s[pos + 1]) & 0x3f) << 12 |
                      (static_cast<unsigned char>(s[pos + 2]) & 0x3f) << 6 |
                      (static_cast<unsigned char>(s[pos + 3]) & 0x3f);
        pos += 4;
        return cp;
    }
    ++pos;
    return b0;
}

bool is_letter(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    }
    if (cp >= 0x00c0 && cp <= 0x00ff) {
        return cp != 0x00d7 && cp != 0x00f7;  // multiplication / division signs
    }
    if (cp >= 0x0100 && cp <= 0x024f) return true;  // Latin Extended-A/B
    if (cp >= 0x0370 && cp <= 0x03ff) return true;  // Greek
    if (cp >= 0x0400 && cp <= 0x04ff) return true;  // Cyrillic
    if (cp >= 0x1e00 && cp <= 0x1eff) return true;  // Latin Extended Additional
    return false;
}

bool boundary_before(std::string_view s, std::size_t pos) {
    if (pos == 0) return true;
    // Step back over continuation bytes to the lead byte of the previous
    // codepoint.
    std::size_t p = pos - 1;
    while (p > 0 && (static_cast<unsigned char>(s[p]) & 0xc0) == 0x80) --p;
    std::size_t q = p;
    const char32_t cp = decode_at(s, q);
    // If decoding did not land back on `pos`, the byte stream is malformed
    // here; treat it as a boundary.
    if (q != pos) return true;
    return !is_letter(cp);
}

bool boundary_after(std::string_view s, std::size_t end) {
    if (end >= s.size()) return true;
    std::size_t p = end;
    return !is_letter(decode_at(s, p));
}

std::size_t word_count(std::string_view s) {
    std::size_t n = 0;
    bool in_token = false;
    for (unsigned char c : s) {
        const bool ws = std::isspace(c) != 0;
        if (!ws && !in_token) ++n;
        in_token = !ws;
    }
    return n;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::size_t count_occurrences(std::string_view s, std::string_view term, bool fold_case) {
    if (term.empty()) return 0;
    std::string sl, tl;
    if (fold_case) {
        sl = ascii_lower(s);
        tl = ascii_lower(term);
        s = sl;
        term = tl;
    }
    std::size_t n = 0;
    std::size_t pos = 0;
    while ((pos = s.find(term, pos)) != std::string_view::npos) {
        if (boundary_before(s, pos) && boundary_after(s, pos + term.size())) {
            ++n;
            pos += term.size();
        } else {
            ++pos;
        }
    }
    return n;
}

bool contains_word(std::string_view s, std::string_view term) {
    return count_occurrences(s, term) > 0;
}

std::size_t possessive_length(std::string_view s, std::size_t pos) {
    static constexpr std::string_view kCurly = "\xe2\x80\x99s";  // U+2019 + s
    if (s.substr(pos).starts_with("'s") && boundary_after(s, pos + 2)) return 2;
    if (s.substr(pos).starts_with(kCurly) && boundary_after(s, pos + 4)) return 4;
    return 0;
}

}  // namespace namebias::text
