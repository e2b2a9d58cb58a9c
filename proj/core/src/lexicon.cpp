#include "psmine/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psmine/version.hpp"

namespace psmine {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCategoryNames[] = {"Voice", "Supportive", "Unsupportive",
                                               "Learning", "Familiarity"};

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Literal occurrences of `body` in `text` that start at a word boundary;
// `anchor_end` additionally requires a boundary after the occurrence.
void find_literal_spans(std::string_view text, std::string_view body, bool anchor_end,
                        std::vector<Span>& out) {
    if (body.empty()) return;
    std::size_t pos = 0;
    while ((pos = text.find(body, pos)) != std::string_view::npos) {
        const std::size_t end = pos + body.size();
        const bool start_ok = pos == 0 || !is_word_char(text[pos - 1]) || !is_word_char(body.front());
        const bool end_ok = !anchor_end || end == text.size() || !is_word_char(text[end]) ||
                            !is_word_char(body.back());
        if (start_ok && end_ok) out.push_back({pos, end});
        ++pos;
    }
}

void find_regex_spans(std::string_view text, const std::regex& re, std::vector<Span>& out) {
    auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), re);
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
        out.push_back({static_cast<std::size_t>(it->position(0)),
                       static_cast<std::size_t>(it->position(0) + it->length(0))});
    }
}

std::string entry_label(const LexiconEntry& e) {
    return std::string(category_name(e.category)) + "/" + e.sub_category;
}

}  // namespace

std::string_view category_name(Category c) {
    return kCategoryNames[static_cast<int>(c)];
}

std::optional<Category> category_from_name(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (name == kCategoryNames[i]) return static_cast<Category>(i);
    return std::nullopt;
}

std::string_view pattern_kind_name(PatternSpec::Kind k) {
    switch (k) {
        case PatternSpec::Kind::Word: return "word";
        case PatternSpec::Kind::Prefix: return "prefix";
        case PatternSpec::Kind::Phrase: return "phrase";
        case PatternSpec::Kind::Raw: return "raw";
    }
    return "word";
}

std::optional<PatternSpec::Kind> pattern_kind_from_name(std::string_view name) {
    if (name == "word") return PatternSpec::Kind::Word;
    if (name == "prefix") return PatternSpec::Kind::Prefix;
    if (name == "phrase") return PatternSpec::Kind::Phrase;
    if (name == "raw") return PatternSpec::Kind::Raw;
    return std::nullopt;
}

Lexicon Lexicon::compile(std::vector<LexiconEntry> entries) {
    if (entries.empty()) throw LexiconError("lexicon has no entries");

    for (auto& entry : entries) {
        const std::string label = entry_label(entry);
        if (entry.sub_category.empty())
            throw LexiconError("entry under " + std::string(category_name(entry.category)) +
                               " has an empty sub-category name");
        if (entry.patterns.empty())
            throw LexiconError(label + ": pattern list is empty");
        for (auto& p : entry.patterns) {
            if (p.body.empty()) throw LexiconError(label + ": empty pattern body");
            if (p.kind == PatternSpec::Kind::Raw) {
                try {
                    std::regex re(p.body, std::regex::ECMAScript);
                } catch (const std::regex_error& e) {
                    throw LexiconError(label + ": raw pattern '" + p.body +
                                       "' does not compile: " + e.what());
                }
                continue;
            }
            p.body = ascii_lower(p.body);
            const bool allow_space = p.kind == PatternSpec::Kind::Phrase;
            for (char c : p.body) {
                const bool ok = is_word_char(c) || c == '\'' || c == '-' || (allow_space && c == ' ');
                if (!ok)
                    throw LexiconError(label + ": pattern '" + p.body +
                                       "' contains characters outside the " +
                                       std::string(pattern_kind_name(p.kind)) +
                                       " alphabet (use kind=raw for regular expressions)");
            }
        }
    }

    // Every sub-category maps to exactly one category.
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto [it, inserted] = seen.emplace(entries[i].sub_category, i);
        if (!inserted)
            throw LexiconError("sub-category '" + entries[i].sub_category +
                               "' appears more than once");
    }

    Lexicon lex;
    lex.entries_ = std::move(entries);
    lex.compiled_raw_.resize(lex.entries_.size());
    for (std::size_t e = 0; e < lex.entries_.size(); ++e) {
        const auto& patterns = lex.entries_[e].patterns;
        lex.compiled_raw_[e].resize(patterns.size());
        for (std::size_t p = 0; p < patterns.size(); ++p)
            if (patterns[p].kind == PatternSpec::Kind::Raw)
                lex.compiled_raw_[e][p] =
                    std::make_shared<const std::regex>(patterns[p].body, std::regex::ECMAScript);
    }
    return lex;
}

const std::regex* Lexicon::raw_regex(std::size_t entry, std::size_t pattern) const {
    return compiled_raw_[entry][pattern].get();
}

std::optional<std::size_t> Lexicon::find_sub_category(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].sub_category == name) return i;
    return std::nullopt;
}

std::string Lexicon::hash() const {
    // FNV-1a 64 over the canonical serialization.
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& e : entries_) {
        feed(category_name(e.category));
        feed("\x1f");
        feed(e.sub_category);
        feed("\x1f");
        for (const auto& p : e.patterns) {
            feed(pattern_kind_name(p.kind));
            feed(":");
            feed(p.body);
            feed("\x1e");
        }
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Lexicon default_lexicon() {
    using K = PatternSpec::Kind;
    auto w = [](std::string_view b) { return PatternSpec{K::Word, std::string(b)}; };
    auto pre = [](std::string_view b) { return PatternSpec{K::Prefix, std::string(b)}; };
    auto ph = [](std::string_view b) { return PatternSpec{K::Phrase, std::string(b)}; };
    auto raw = [](std::string_view b) { return PatternSpec{K::Raw, std::string(b)}; };

    std::vector<LexiconEntry> entries;
    entries.push_back({Category::Voice, "Mistakes", {w("sorry"), w("mistake"), pre("apolog")}});
    entries.push_back({Category::Voice, "Critiques",
                       {w("incorrect"), w("disagree"), w("wrong"), w("impossible"), w("unlikely"),
                        ph("don't think")}});
    entries.push_back({Category::Voice, "Asking for Help", {ph("don't know"), w("unsure"), w("help")}});
    entries.push_back({Category::Voice, "Questions",
                       {w("who"), w("what"), w("where"), w("why"), w("how"), raw("\\?")}});
    entries.push_back({Category::Supportive, "Agreement",
                       {w("yes"), w("yeah"), w("ya"), w("yea"), pre("agree")}});
    entries.push_back({Category::Supportive, "Appreciative",
                       {pre("congrat"), w("amazing"), w("amaze"), w("wonderful"), w("wow"),
                        pre("thank")}});
    entries.push_back({Category::Unsupportive, "Unappreciative",
                       {ph("not needed"), w("stop"), w("waste")}});
    entries.push_back({Category::Learning, "Suggestions",
                       {pre("improv"), w("better"), w("instead"), pre("actual"), ph("what if")}});
    entries.push_back({Category::Learning, "Asking for Input",
                       {w("feedback"), w("share"), w("thoughts"), pre("idea")}});
    // The emoji shortcode grammar stands in for the table's typeset-garbled
    // regex; see README.
    entries.push_back({Category::Familiarity, "Emojis", {raw(":[a-z0-9_+'-]+:")}});
    entries.push_back({Category::Familiarity, "Jokes",
                       {pre("hah"), pre("aha"), pre("lol"), pre("lmao"), pre("jok")}});
    return Lexicon::compile(std::move(entries));
}

Lexicon lexicon_from_json_text(std::string_view text, const std::string& origin) {
    ordered_json doc = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw LexiconError(origin + ": malformed JSON");
    if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array())
        throw LexiconError(origin + ": expected an object with a 'categories' array");
    if (doc.contains("schema") && doc["schema"] != kLexiconSchema)
        throw LexiconError(origin + ": unexpected schema marker '" +
                           doc["schema"].dump() + "'");

    std::vector<LexiconEntry> entries;
    for (const auto& cat : doc["categories"]) {
        if (!cat.is_object() || !cat.contains("category"))
            throw LexiconError(origin + ": category block without 'category' name");
        const std::string cat_name = cat["category"].get<std::string>();
        auto category = category_from_name(cat_name);
        if (!category)
            throw LexiconError(origin + ": unknown category '" + cat_name +
                               "' (expected Voice, Supportive, Unsupportive, Learning or Familiarity)");
        if (!cat.contains("sub_categories") || !cat["sub_categories"].is_array())
            throw LexiconError(origin + ": category '" + cat_name + "' has no sub_categories array");
        for (const auto& sub : cat["sub_categories"]) {
            LexiconEntry entry;
            entry.category = *category;
            if (!sub.is_object() || !sub.contains("name") || !sub["name"].is_string())
                throw LexiconError(origin + ": sub-category under '" + cat_name +
                                   "' without a 'name'");
            entry.sub_category = sub["name"].get<std::string>();
            if (!sub.contains("patterns") || !sub["patterns"].is_array())
                throw LexiconError(origin + ": sub-category '" + entry.sub_category +
                                   "' has no patterns array");
            for (const auto& pat : sub["patterns"]) {
                if (!pat.is_object() || !pat.contains("kind") || !pat.contains("body"))
                    throw LexiconError(origin + ": pattern in '" + entry.sub_category +
                                       "' must have 'kind' and 'body'");
                auto kind = pattern_kind_from_name(pat["kind"].get<std::string>());
                if (!kind)
                    throw LexiconError(origin + ": pattern in '" + entry.sub_category +
                                       "' has unknown kind '" + pat["kind"].get<std::string>() +
                                       "' (word, prefix, phrase or raw)");
                entry.patterns.push_back({*kind, pat["body"].get<std::string>()});
            }
            entries.push_back(std::move(entry));
        }
    }

    try {
        return Lexicon::compile(std::move(entries));
    } catch (const LexiconError& e) {
        throw LexiconError(origin + ": " + e.what());
    }
}

Lexicon load_lexicon(const std::filesystem::path& config_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw LexiconError("cannot read lexicon config " + config_path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return lexicon_from_json_text(ss.str(), config_path.string());
}

std::string lexicon_to_json_text(const Lexicon& lexicon) {
    ordered_json doc;
    doc["schema"] = kLexiconSchema;
    ordered_json categories = ordered_json::array();
    // Entries regrouped by category, preserving entry order inside each.
    for (int c = 0; c < 5; ++c) {
        ordered_json block;
        block["category"] = kCategoryNames[c];
        ordered_json subs = ordered_json::array();
        for (const auto& e : lexicon.entries()) {
            if (static_cast<int>(e.category) != c) continue;
            ordered_json sub;
            sub["name"] = e.sub_category;
            ordered_json patterns = ordered_json::array();
            for (const auto& p : e.patterns) {
                ordered_json pj;
                pj["kind"] = std::string(pattern_kind_name(p.kind));
                pj["body"] = p.body;
                patterns.push_back(std::move(pj));
            }
            sub["patterns"] = std::move(patterns);
            subs.push_back(std::move(sub));
        }
        if (subs.empty()) continue;
        block["sub_categories"] = std::move(subs);
        categories.push_back(std::move(block));
    }
    doc["categories"] = std::move(categories);
    return doc.dump(2) + "\n";
}

bool MatchResult::has(std::string_view sub_category) const {
    return std::any_of(hits.begin(), hits.end(),
                       [&](const SubCategoryHit& h) { return h.sub_category == sub_category; });
}

MatchResult match_message(const Lexicon& lexicon, const Message& message) {
    MatchResult result;
    result.channel_id = message.channel_id;
    result.ts = message.ts;
    result.matchable_text = normalize_for_matching(message.text);
    const std::string_view text = result.matchable_text;

    const auto& entries = lexicon.entries();
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const auto& entry = entries[e];
        std::vector<Span> spans;
        for (std::size_t p = 0; p < entry.patterns.size(); ++p) {
            const auto& pattern = entry.patterns[p];
            switch (pattern.kind) {
                case PatternSpec::Kind::Word:
                case PatternSpec::Kind::Phrase:
                    find_literal_spans(text, pattern.body, /*anchor_end=*/true, spans);
                    break;
                case PatternSpec::Kind::Prefix:
                    find_literal_spans(text, pattern.body, /*anchor_end=*/false, spans);
                    break;
                case PatternSpec::Kind::Raw:
                    find_regex_spans(text, *lexicon.raw_regex(e, p), spans);
                    break;
            }
        }
        if (spans.empty()) continue;
        std::sort(spans.begin(), spans.end());
        spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
        result.hits.push_back({entry.category, entry.sub_category, std::move(spans)});
    }
    return result;
}

KeywordTabulation tabulate_keywords(const Corpus& corpus, const Lexicon& lexicon) {
    KeywordTabulation tab;
    tab.total_messages = static_cast<std::int64_t>(corpus.analytic_message_count());

    std::vector<std::int64_t> counts(lexicon.entries().size(), 0);
    for (const auto& [_, msgs] : corpus.messages) {
        for (const auto& m : msgs) {
            if (!m.analytic()) continue;
            MatchResult match = match_message(lexicon, m);
            for (const auto& hit : match.hits) {
                auto idx = lexicon.find_sub_category(hit.sub_category);
                counts[*idx] += 1;
            }
        }
    }

    for (std::size_t i = 0; i < lexicon.entries().size(); ++i) {
        const auto& e = lexicon.entries()[i];
        KeywordTabulationRow row;
        row.category = e.category;
        row.sub_category = e.sub_category;
        row.message_count = counts[i];
        row.pct_of_total = Ratio{counts[i], tab.total_messages};  // den 0 flags undefined
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

std::vector<ConcordanceEntry> concordance(const Corpus& corpus, const Lexicon& lexicon,
                                          std::string_view sub_category, std::size_t context) {
    auto idx = lexicon.find_sub_category(sub_category);
    if (!idx) {
        std::string valid;
        for (const auto& e : lexicon.entries()) {
            if (!valid.empty()) valid += ", ";
            valid += e.sub_category;
        }
        throw LexiconError("unknown sub-category '" + std::string(sub_category) +
                           "' (valid: " + valid + ")");
    }

    std::vector<ConcordanceEntry> out;
    for (const auto& [channel_id, msgs] : corpus.messages) {
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            if (!msgs[i].analytic()) continue;
            MatchResult match = match_message(lexicon, msgs[i]);
            const SubCategoryHit* hit = nullptr;
            for (const auto& h : match.hits)
                if (h.sub_category == sub_category) hit = &h;
            if (!hit) continue;

            ConcordanceEntry entry;
            entry.matched = msgs[i];
            entry.spans = hit->spans;
            const std::size_t lo = i >= context ? i - context : 0;
            for (std::size_t k = lo; k < i; ++k) entry.preceding.push_back(msgs[k]);
            for (std::size_t k = i + 1; k < msgs.size() && k - i <= context; ++k)
                entry.following.push_back(msgs[k]);
            out.push_back(std::move(entry));
        }
    }
    return out;
}

namespace {

std::string highlight(std::string_view matchable, const std::vector<Span>& spans) {
    // Merge overlapping spans, then wrap each in guillemet markers.
    std::vector<Span> merged;
    for (const Span& s : spans) {
        if (!merged.empty() && s.begin <= merged.back().end)
            merged.back().end = std::max(merged.back().end, s.end);
        else
            merged.push_back(s);
    }
    std::string out;
    std::size_t pos = 0;
    for (const Span& s : merged) {
        out.append(matchable.substr(pos, s.begin - pos));
        out.append("«");
        out.append(matchable.substr(s.begin, s.end - s.begin));
        out.append("»");
        pos = s.end;
    }
    out.append(matchable.substr(pos));
    return out;
}

std::string author_name(const Corpus& corpus, const Message& m) {
    if (!m.author) return "(unknown)";
    auto it = corpus.users.find(*m.author);
    return it != corpus.users.end() ? it->second.display_name : *m.author;
}

}  // namespace

std::string render_concordance_text(const std::vector<ConcordanceEntry>& entries,
                                    const Corpus& corpus) {
    std::ostringstream out;
    bool first = true;
    for (const auto& e : entries) {
        if (!first) out << "\n";
        first = false;
        auto ch = corpus.channels.find(e.matched.channel_id);
        const std::string channel = ch != corpus.channels.end() ? ch->second : e.matched.channel_id;
        out << "#" << channel << " " << e.matched.ts.str() << " " << author_name(corpus, e.matched)
            << "\n";
        for (const auto& m : e.preceding)
            out << "    " << author_name(corpus, m) << ": " << m.text << "\n";
        out << "  > " << author_name(corpus, e.matched) << ": "
            << highlight(normalize_for_matching(e.matched.text), e.spans) << "\n";
        for (const auto& m : e.following)
            out << "    " << author_name(corpus, m) << ": " << m.text << "\n";
    }
    return out.str();
}

std::string render_concordance_jsonl(const std::vector<ConcordanceEntry>& entries) {
    auto brief = [](const Message& m) {
        ordered_json j;
        j["ts"] = m.ts.str();
        j["author"] = m.author ? ordered_json(*m.author) : ordered_json(nullptr);
        j["text"] = m.text;
        return j;
    };
    std::ostringstream out;
    for (const auto& e : entries) {
        ordered_json j;
        j["channel"] = e.matched.channel_id;
        j["ts"] = e.matched.ts.str();
        j["author"] = e.matched.author ? ordered_json(*e.matched.author) : ordered_json(nullptr);
        j["text"] = e.matched.text;
        j["matchable"] = normalize_for_matching(e.matched.text);
        ordered_json spans = ordered_json::array();
        for (const Span& s : e.spans) spans.push_back({s.begin, s.end});
        j["spans"] = std::move(spans);
        ordered_json before = ordered_json::array();
        for (const auto& m : e.preceding) before.push_back(brief(m));
        j["before"] = std::move(before);
        ordered_json after = ordered_json::array();
        for (const auto& m : e.following) after.push_back(brief(m));
        j["after"] = std::move(after);
        out << j.dump() << "\n";
    }
    return out.str();
}

}  // namespace psmine
