#include "bms/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace bms {

PhraseLookup::PhraseLookup(const MacroScheme& scheme) : scheme_(&scheme) {
    starts_.reserve(scheme.phrases.size());
    for (const Phrase& p : scheme.phrases) starts_.push_back(p.start);
}

int PhraseLookup::phrase_at(Pos pos) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), pos);
    return static_cast<int>(it - starts_.begin()) - 1;
}

Pos PhraseLookup::parent_of(Pos pos) const {
    const Phrase& p = scheme_->phrases[static_cast<std::size_t>(phrase_at(pos))];
    if (pos == p.letter_pos()) return 0;
    return p.source + (pos - p.start);
}

Sym PhraseLookup::letter_at(Pos pos) const {
    return scheme_->phrases[static_cast<std::size_t>(phrase_at(pos))].letter;
}

DecodeOutcome decode_position(const MacroScheme& scheme, Pos pos) {
    const PhraseLookup lookup(scheme);
    const Pos n = scheme.text_len();
    // order of first visit along this chain; 0 = unvisited
    std::vector<int> seen_at(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Pos> chain;
    Pos cur = pos;
    for (;;) {
        if (seen_at[static_cast<std::size_t>(cur)] != 0) {
            const int first = seen_at[static_cast<std::size_t>(cur)] - 1;
            DecodeOutcome out;
            out.cycle.assign(chain.begin() + first, chain.end());
            return out;
        }
        chain.push_back(cur);
        seen_at[static_cast<std::size_t>(cur)] = static_cast<int>(chain.size());
        const Pos parent = lookup.parent_of(cur);
        if (parent == 0) return DecodeOutcome{lookup.letter_at(cur), {}};
        cur = parent;
    }
}

namespace {

enum class Color : unsigned char { Unknown, OnStack, Ok, Bad };

}  // namespace

ValidationReport validate(const MacroScheme& scheme, const Text& text) {
    ValidationReport report;
    const Pos n = text.n();
    const PhraseLookup lookup(scheme);

    for (std::size_t i = 0; i < scheme.phrases.size(); ++i) {
        const Phrase& p = scheme.phrases[i];
        if (p.len > 0 && text.span(p.source, p.len) != text.span(p.start, p.len))
            report.mismatched_phrases.push_back(static_cast<int>(i));
    }

    std::vector<Color> color(static_cast<std::size_t>(n) + 1, Color::Unknown);
    std::vector<Pos> chain;
    for (Pos start = 1; start <= n; ++start) {
        if (color[static_cast<std::size_t>(start)] != Color::Unknown) continue;
        chain.clear();
        Pos cur = start;
        Color verdict;
        for (;;) {
            const Color c = color[static_cast<std::size_t>(cur)];
            if (c == Color::Ok) {
                verdict = Color::Ok;
                break;
            }
            if (c == Color::Bad) {
                verdict = Color::Bad;
                break;
            }
            if (c == Color::OnStack) {
                // new cycle: the suffix of the chain starting at cur
                auto first = std::find(chain.begin(), chain.end(), cur);
                report.cycles.emplace_back(first, chain.end());
                verdict = Color::Bad;
                break;
            }
            color[static_cast<std::size_t>(cur)] = Color::OnStack;
            chain.push_back(cur);
            const Pos parent = lookup.parent_of(cur);
            if (parent == 0) {
                verdict = Color::Ok;
                break;
            }
            cur = parent;
        }
        for (Pos q : chain) color[static_cast<std::size_t>(q)] = verdict;
    }
    return report;
}

std::optional<Text> materialize(const MacroScheme& scheme) {
    const Pos n = scheme.text_len();
    const PhraseLookup lookup(scheme);
    std::string bytes(static_cast<std::size_t>(n), '\0');
    // 0 = unknown, 1 = on current chain, 2 = resolved
    std::vector<unsigned char> state(static_cast<std::size_t>(n) + 1, 0);
    std::vector<Pos> chain;
    for (Pos start = 1; start <= n; ++start) {
        if (state[static_cast<std::size_t>(start)] == 2) continue;
        chain.clear();
        Pos cur = start;
        Sym sym = 0;
        for (;;) {
            if (state[static_cast<std::size_t>(cur)] == 2) {
                sym = static_cast<Sym>(bytes[static_cast<std::size_t>(cur) - 1]);
                break;
            }
            if (state[static_cast<std::size_t>(cur)] == 1) return std::nullopt;  // loop
            state[static_cast<std::size_t>(cur)] = 1;
            chain.push_back(cur);
            const Pos parent = lookup.parent_of(cur);
            if (parent == 0) {
                sym = lookup.letter_at(cur);
                break;
            }
            cur = parent;
        }
        for (Pos q : chain) {
            bytes[static_cast<std::size_t>(q) - 1] = static_cast<char>(sym);
            state[static_cast<std::size_t>(q)] = 2;
        }
    }
    return Text(std::move(bytes));
}

std::string write_scheme(const MacroScheme& scheme) {
    std::string out = "BMS 1\n";
    out += "n " + std::to_string(scheme.text_len()) + "\n";
    out += "k " + std::to_string(scheme.k()) + "\n";
    for (const Phrase& p : scheme.phrases) {
        out += std::to_string(p.source);
        out += ' ';
        out += std::to_string(p.len);
        out += ' ';
        out += std::to_string(static_cast<int>(p.letter));
        out += '\n';
    }
    return out;
}

namespace {

long parse_int(std::string_view token, const char* what) {
    long value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || token.empty())
        throw FormatError(std::string("bad ") + what + " field");
    return value;
}

// Consumes the next LF-terminated line; throws when no terminator is left.
std::string_view next_line(std::string_view& rest) {
    const std::size_t eol = rest.find('\n');
    if (eol == std::string_view::npos) throw FormatError("truncated scheme stream");
    std::string_view line = rest.substr(0, eol);
    rest.remove_prefix(eol + 1);
    return line;
}

}  // namespace

MacroScheme read_scheme(std::string_view data) {
    std::string_view rest = data;
    if (next_line(rest) != "BMS 1") throw FormatError("bad magic, expected 'BMS 1'");

    std::string_view nline = next_line(rest);
    if (nline.substr(0, 2) != "n ") throw FormatError("expected 'n <decimal>'");
    const long n = parse_int(nline.substr(2), "n");
    if (n < 1) throw FormatError("n must be positive");

    std::string_view kline = next_line(rest);
    if (kline.substr(0, 2) != "k ") throw FormatError("expected 'k <decimal>'");
    const long k = parse_int(kline.substr(2), "k");
    if (k < 1) throw FormatError("k must be positive");

    MacroScheme scheme;
    scheme.phrases.reserve(static_cast<std::size_t>(k));
    Pos start = 1;
    for (long i = 0; i < k; ++i) {
        std::string_view line = next_line(rest);
        const std::size_t s1 = line.find(' ');
        const std::size_t s2 = s1 == std::string_view::npos ? s1 : line.find(' ', s1 + 1);
        if (s2 == std::string_view::npos) throw FormatError("phrase line needs three fields");
        const long source = parse_int(line.substr(0, s1), "source");
        const long len = parse_int(line.substr(s1 + 1, s2 - s1 - 1), "len");
        const long letter = parse_int(line.substr(s2 + 1), "letter");
        if (len < 0) throw FormatError("negative phrase length");
        if (letter < 0 || letter > 255) throw FormatError("letter out of byte range");
        if (len == 0) {
            if (source != 0) throw FormatError("zero-length phrase must have source 0");
        } else {
            if (source < 1 || source + len - 1 > n) throw FormatError("source range outside text");
            if (source == start) throw FormatError("phrase source equals its own start");
        }
        if (static_cast<long>(start) + len > n) throw FormatError("phrases overflow the text");
        scheme.phrases.push_back(Phrase{start, static_cast<Pos>(source), static_cast<Pos>(len),
                                        static_cast<Sym>(letter)});
        start += static_cast<Pos>(len) + 1;
    }
    if (!rest.empty()) throw FormatError("trailing data after the last phrase");
    if (static_cast<long>(start) != n + 1) throw FormatError("phrases do not tile the text");
    return scheme;
}

}  // namespace bms
