#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "roughsig/errors.hpp"

namespace roughsig {

// A word over the alphabet {1, ..., d}. The empty word is the unit.
using Word = std::vector<int>;

inline std::size_t num_words(int dim, int len) {
    std::size_t n = 1;
    for (int k = 0; k < len; ++k) n *= static_cast<std::size_t>(dim);
    return n;
}

// Lexicographic index of a fixed-length word, base-dim digits (letters are
// 1-based).
inline std::size_t word_index(const Word& w, int dim) {
    std::size_t idx = 0;
    for (int letter : w) {
        if (letter < 1 || letter > dim)
            throw InputError("word letter out of range 1.." + std::to_string(dim));
        idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

inline Word index_to_word(std::size_t idx, int len, int dim) {
    Word w(static_cast<std::size_t>(len));
    for (int pos = len - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] = static_cast<int>(idx % static_cast<std::size_t>(dim)) + 1;
        idx /= static_cast<std::size_t>(dim);
    }
    return w;
}

// Advances w to the next word of the same length in lexicographic order;
// returns false after the last one.
inline bool next_word(Word& w, int dim) {
    for (std::size_t pos = w.size(); pos-- > 0;) {
        if (w[pos] < dim) {
            ++w[pos];
            return true;
        }
        w[pos] = 1;
    }
    return false;
}

inline std::string format_word(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

inline Word parse_word(const std::string& s, int dim) {
    Word w;
    if (s.empty()) return w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty()) throw InputError("empty letter in word '" + s + "'");
        int letter = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw InputError("bad letter '" + tok + "' in word");
            letter = letter * 10 + (c - '0');
        }
        if (letter < 1 || letter > dim)
            throw InputError("letter " + tok + " outside alphabet 1.." + std::to_string(dim));
        w.push_back(letter);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return w;
}

} // namespace roughsig
