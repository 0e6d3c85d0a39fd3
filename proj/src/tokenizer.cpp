#include "patchlens/tokenizer.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

namespace patchlens {

namespace {

// ---------------------------------------------------------------------
// UTF-8
// ---------------------------------------------------------------------

std::vector<uint32_t> utf8_decode(const std::string& s) {
    std::vector<uint32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    const auto* b = reinterpret_cast<const unsigned char*>(s.data());
    const std::size_t n = s.size();
    while (i < n) {
        const unsigned char c = b[i];
        uint32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < n && (b[i + 1] & 0xC0) == 0x80) {
            cp = (uint32_t(c & 0x1F) << 6) | (b[i + 1] & 0x3F);
            len = 2;
        } else if ((c >> 4) == 0xE && i + 2 < n && (b[i + 1] & 0xC0) == 0x80 &&
                   (b[i + 2] & 0xC0) == 0x80) {
            cp = (uint32_t(c & 0x0F) << 12) | (uint32_t(b[i + 1] & 0x3F) << 6) | (b[i + 2] & 0x3F);
            len = 3;
        } else if ((c >> 3) == 0x1E && i + 3 < n && (b[i + 1] & 0xC0) == 0x80 &&
                   (b[i + 2] & 0xC0) == 0x80 && (b[i + 3] & 0xC0) == 0x80) {
            cp = (uint32_t(c & 0x07) << 18) | (uint32_t(b[i + 1] & 0x3F) << 12) |
                 (uint32_t(b[i + 2] & 0x3F) << 6) | (b[i + 3] & 0x3F);
            len = 4;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void utf8_append(std::string& s, uint32_t cp) {
    if (cp < 0x80) {
        s += static_cast<char>(cp);
    } else if (cp < 0x800) {
        s += static_cast<char>(0xC0 | (cp >> 6));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        s += static_cast<char>(0xE0 | (cp >> 12));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        s += static_cast<char>(0xF0 | (cp >> 18));
        s += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string utf8_encode(const std::vector<uint32_t>& cps) {
    std::string s;
    s.reserve(cps.size());
    for (uint32_t cp : cps) utf8_append(s, cp);
    return s;
}

// ---------------------------------------------------------------------
// Character classes (uncased-BERT basic tokenizer rules)
// ---------------------------------------------------------------------

bool is_whitespace(uint32_t cp) {
    switch (cp) {
        case ' ':
        case '\t':
        case '\n':
        case '\r':
        case 0xA0:
        case 0x1680:
        case 0x202F:
        case 0x205F:
        case 0x3000:
        case 0x2028:
        case 0x2029:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_control(uint32_t cp) {
    if (cp == '\t' || cp == '\n' || cp == '\r') return false;  // treated as whitespace
    return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F) || cp == 0x200B || cp == 0xFEFF;
}

bool is_punct(uint32_t cp) {
    // ASCII punctuation ranges, then the general/CJK punctuation blocks
    // that show up in MS MARCO / mMARCO text.
    if ((cp >= 33 && cp <= 47) || (cp >= 58 && cp <= 64) || (cp >= 91 && cp <= 96) ||
        (cp >= 123 && cp <= 126)) {
        return true;
    }
    if (cp == 0xA1 || cp == 0xBF || cp == 0xAB || cp == 0xBB || cp == 0xB7) return true;
    if (cp >= 0x2010 && cp <= 0x2027) return true;   // dashes, quotes, bullets
    if (cp >= 0x2030 && cp <= 0x205E) return true;   // permille .. misc punct
    if (cp >= 0x3001 && cp <= 0x303F) return true;   // CJK symbols and punctuation
    if (cp >= 0xFF01 && cp <= 0xFF0F) return true;   // fullwidth ! .. /
    if (cp >= 0xFF1A && cp <= 0xFF20) return true;   // fullwidth : .. @
    if (cp >= 0xFF3B && cp <= 0xFF40) return true;   // fullwidth [ .. `
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;   // fullwidth { .. halfwidth ・
    return false;
}

bool is_cjk(uint32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
           (cp >= 0x20000 && cp <= 0x2A6DF) || (cp >= 0x2A700 && cp <= 0x2B73F) ||
           (cp >= 0x2B740 && cp <= 0x2B81F) || (cp >= 0x2B820 && cp <= 0x2CEAF) ||
           (cp >= 0xF900 && cp <= 0xFADF) || (cp >= 0x2F800 && cp <= 0x2FA1F);
}

uint32_t lowercase_cp(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 uppercase
    if (cp == 0x130) return 'i';                                   // I with dot above
    if (cp == 0x178) return 0xFF;                                  // Y with diaeresis
    if (cp >= 0x100 && cp <= 0x137 && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x139 && cp <= 0x148 && (cp % 2) == 1) return cp + 1;
    if (cp >= 0x14A && cp <= 0x177 && (cp % 2) == 0) return cp + 1;
    if ((cp == 0x179 || cp == 0x17B || cp == 0x17D)) return cp + 1;
    return cp;
}

// NFD-style accent fold for the lowercase Latin range: returns the base
// letter for combining-mark compositions, 0 for a bare combining mark,
// and the input itself for everything else (stroked letters like đ or ł
// do not decompose, matching the reference tokenizer).
uint32_t strip_accent_cp(uint32_t cp) {
    if (cp >= 0x300 && cp <= 0x36F) return 0;  // combining marks (pre-decomposed text)
    switch (cp) {
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5: return 'a';
        case 0xE7: return 'c';
        case 0xE8: case 0xE9: case 0xEA: case 0xEB: return 'e';
        case 0xEC: case 0xED: case 0xEE: case 0xEF: return 'i';
        case 0xF1: return 'n';
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: return 'o';
        case 0xF9: case 0xFA: case 0xFB: case 0xFC: return 'u';
        case 0xFD: case 0xFF: return 'y';
        case 0x101: case 0x103: case 0x105: return 'a';
        case 0x107: case 0x109: case 0x10B: case 0x10D: return 'c';
        case 0x10F: return 'd';
        case 0x113: case 0x115: case 0x117: case 0x119: case 0x11B: return 'e';
        case 0x11D: case 0x11F: case 0x121: case 0x123: return 'g';
        case 0x125: return 'h';
        case 0x129: case 0x12B: case 0x12D: case 0x12F: return 'i';
        case 0x135: return 'j';
        case 0x137: return 'k';
        case 0x13A: case 0x13C: case 0x13E: return 'l';
        case 0x144: case 0x146: case 0x148: return 'n';
        case 0x14D: case 0x14F: case 0x151: return 'o';
        case 0x155: case 0x157: case 0x159: return 'r';
        case 0x15B: case 0x15D: case 0x15F: case 0x161: return 's';
        case 0x163: case 0x165: return 't';
        case 0x169: case 0x16B: case 0x16D: case 0x16F: case 0x171: case 0x173: return 'u';
        case 0x175: return 'w';
        case 0x177: return 'y';
        case 0x17A: case 0x17C: case 0x17E: return 'z';
        default: return cp;
    }
}

constexpr std::size_t kMaxWordpieceChars = 100;

std::vector<std::string> wordpiece(const std::vector<uint32_t>& word, const Vocab& vocab) {
    if (word.size() > kMaxWordpieceChars) return {"[UNK]"};
    std::vector<std::string> pieces;
    std::size_t start = 0;
    while (start < word.size()) {
        std::size_t end = word.size();
        std::string found;
        while (start < end) {
            std::string cand = start > 0 ? "##" : "";
            for (std::size_t i = start; i < end; ++i) utf8_append(cand, word[i]);
            if (vocab.contains(cand)) {
                found = std::move(cand);
                break;
            }
            --end;
        }
        if (found.empty()) return {"[UNK]"};  // whole word unknowable
        pieces.push_back(std::move(found));
        start = end;
    }
    return pieces;
}

}  // namespace

// ---------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------

Vocab load_vocab(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("vocab: cannot open " + path);
    Vocab v;
    std::string line;
    int id = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            // Tolerate a trailing newline; reject holes in the id space.
            if (in.peek() == EOF) break;
            throw FormatError("vocab: empty token at line " + std::to_string(id + 1));
        }
        if (v.token_to_id.count(line)) {
            throw FormatError("vocab: duplicate token '" + line + "' at line " +
                              std::to_string(id + 1));
        }
        v.token_to_id.emplace(line, id);
        v.id_to_token.push_back(line);
        ++id;
    }
    auto special = [&](const char* tok) {
        auto it = v.token_to_id.find(tok);
        if (it == v.token_to_id.end()) {
            throw FormatError(std::string("vocab: missing required token ") + tok);
        }
        return it->second;
    };
    v.pad_id = special("[PAD]");
    v.unk_id = special("[UNK]");
    v.cls_id = special("[CLS]");
    v.sep_id = special("[SEP]");
    return v;
}

std::vector<std::string> basic_tokenize(const std::string& text) {
    // Clean + CJK spacing in one pass over codepoints.
    std::vector<uint32_t> cleaned;
    cleaned.reserve(text.size());
    for (uint32_t cp : utf8_decode(text)) {
        if (cp == 0 || cp == 0xFFFD || is_control(cp)) continue;
        if (is_whitespace(cp)) {
            cleaned.push_back(' ');
        } else if (is_cjk(cp)) {
            cleaned.push_back(' ');
            cleaned.push_back(cp);
            cleaned.push_back(' ');
        } else {
            cleaned.push_back(cp);
        }
    }

    std::vector<std::string> out;
    std::vector<uint32_t> word;
    auto flush_word = [&]() {
        if (!word.empty()) {
            out.push_back(utf8_encode(word));
            word.clear();
        }
    };
    for (uint32_t raw : cleaned) {
        if (raw == ' ') {
            flush_word();
            continue;
        }
        uint32_t cp = strip_accent_cp(lowercase_cp(raw));
        if (cp == 0) continue;  // bare combining mark
        if (is_punct(cp)) {
            flush_word();
            out.push_back(utf8_encode({cp}));
        } else {
            word.push_back(cp);
        }
    }
    flush_word();
    return out;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> out;
    for (auto& tok : basic_tokenize(text)) {
        const auto cps = utf8_decode(tok);
        const bool punct_only =
            std::all_of(cps.begin(), cps.end(), [](uint32_t c) { return is_punct(c); });
        if (!punct_only) out.push_back(tok);
    }
    return out;
}

Encoding encode(const std::string& text, const Vocab& vocab, std::size_t max_len) {
    if (max_len < 2) throw ShapeError("encode: max_len must be >= 2");
    Encoding enc;
    enc.ids.push_back(vocab.cls_id);

    const auto words = basic_tokenize(text);
    const std::size_t budget = max_len - 1;  // reserve the final [SEP] slot
    bool full = false;
    for (std::size_t w = 0; w < words.size() && !full; ++w) {
        const auto pieces = wordpiece(utf8_decode(words[w]), vocab);
        WordSpan span{w, enc.ids.size(), enc.ids.size()};
        for (const auto& piece : pieces) {
            if (enc.ids.size() >= budget) {
                full = true;
                break;
            }
            enc.ids.push_back(vocab.id(piece));
            span.end = enc.ids.size();
        }
        if (span.end > span.begin) enc.word_spans.push_back(span);
    }
    enc.ids.push_back(vocab.sep_id);
    enc.attention_mask.assign(enc.ids.size(), 1);
    enc.seq_len = enc.ids.size();
    return enc;
}

std::size_t word_token_count(const std::string& word, const Vocab& vocab) {
    std::size_t n = 0;
    for (const auto& tok : basic_tokenize(word)) {
        n += wordpiece(utf8_decode(tok), vocab).size();
    }
    return n;
}

std::vector<std::size_t> match_word_positions(const std::vector<std::string>& doc_words,
                                              const std::string& term) {
    const std::string needle = lowercase_word(term);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < doc_words.size(); ++i) {
        if (lowercase_word(doc_words[i]) == needle) hits.push_back(i);
    }
    return hits;
}

void pad_encoding(Encoding& enc, std::size_t target_len, const Vocab& vocab, bool masked) {
    if (target_len < enc.ids.size()) {
        throw ShapeError("pad_encoding: target " + std::to_string(target_len) +
                         " shorter than sequence " + std::to_string(enc.ids.size()));
    }
    while (enc.ids.size() < target_len) {
        enc.ids.push_back(vocab.pad_id);
        enc.attention_mask.push_back(masked ? 0 : 1);
    }
}

std::string lowercase_word(const std::string& word) {
    std::string out;
    out.reserve(word.size());
    for (uint32_t cp : utf8_decode(word)) utf8_append(out, lowercase_cp(cp));
    return out;
}

}  // namespace patchlens
