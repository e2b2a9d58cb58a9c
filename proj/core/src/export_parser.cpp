#include "psmine/export_parser.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "zip_reader.hpp"

namespace psmine {

namespace {

using nlohmann::json;

// Uniform view over an unzipped directory and a zip archive: relative
// '/'-separated entry names plus file contents.
class ExportSource {
public:
    virtual ~ExportSource() = default;
    virtual std::vector<std::string> entries() const = 0;  // sorted
    virtual std::string read(const std::string& entry) const = 0;
};

class DirSource final : public ExportSource {
public:
    explicit DirSource(std::filesystem::path root) : root_(std::move(root)) {}

    std::vector<std::string> entries() const override {
        std::vector<std::string> out;
        for (const auto& item : std::filesystem::recursive_directory_iterator(root_)) {
            if (!item.is_regular_file()) continue;
            out.push_back(item.path().lexically_relative(root_).generic_string());
        }
        // directory_iterator order is unspecified; sort for determinism
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string read(const std::string& entry) const override {
        std::ifstream in(root_ / entry, std::ios::binary);
        if (!in) throw ParseError(entry, "cannot read file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

private:
    std::filesystem::path root_;
};

class ZipSource final : public ExportSource {
public:
    explicit ZipSource(const std::filesystem::path& path)
        : files_(zip::read_zip_archive(path)) {
        // Some archives wrap the export in a single top-level folder; strip it.
        if (!files_.count("channels.json")) {
            auto first = files_.begin();
            if (first != files_.end()) {
                auto slash = first->first.find('/');
                if (slash != std::string::npos) {
                    std::string prefix = first->first.substr(0, slash + 1);
                    bool all = std::all_of(files_.begin(), files_.end(), [&](const auto& kv) {
                        return kv.first.rfind(prefix, 0) == 0;
                    });
                    if (all && files_.count(prefix + "channels.json")) {
                        std::map<std::string, std::string> stripped;
                        for (auto& [name, data] : files_)
                            stripped.emplace(name.substr(prefix.size()), std::move(data));
                        files_ = std::move(stripped);
                    }
                }
            }
        }
    }

    std::vector<std::string> entries() const override {
        std::vector<std::string> out;
        out.reserve(files_.size());
        for (const auto& [name, _] : files_) out.push_back(name);
        return out;  // std::map keys are already sorted
    }

    std::string read(const std::string& entry) const override {
        auto it = files_.find(entry);
        if (it == files_.end()) throw ParseError(entry, "missing zip entry");
        return it->second;
    }

private:
    std::map<std::string, std::string> files_;
};

json parse_json_document(const ExportSource& source, const std::string& entry) {
    json doc = json::parse(source.read(entry), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError(entry, "malformed JSON");
    return doc;
}

std::string user_display_name(const json& user) {
    if (user.contains("profile") && user["profile"].is_object()) {
        const json& profile = user["profile"];
        for (const char* key : {"display_name", "real_name"}) {
            if (profile.contains(key) && profile[key].is_string()) {
                std::string v = profile[key].get<std::string>();
                if (!v.empty()) return v;
            }
        }
    }
    if (user.contains("name") && user["name"].is_string())
        return user["name"].get<std::string>();
    return user.value("id", std::string{});
}

Message parse_message_record(const json& rec, const std::string& channel_id,
                             const std::string& file_entry, std::size_t index) {
    Message m;
    m.channel_id = channel_id;

    if (!rec.contains("ts") || !rec["ts"].is_string())
        throw ParseError(file_entry, "record " + std::to_string(index) +
                                         " in channel " + channel_id + ": missing ts");
    try {
        m.ts = SlackTs::parse(rec["ts"].get<std::string>());
    } catch (const CorpusError& e) {
        throw ParseError(file_entry, "record " + std::to_string(index) + " in channel " +
                                         channel_id + ": " + e.what());
    }

    if (rec.contains("user") && rec["user"].is_string())
        m.author = rec["user"].get<std::string>();

    std::string raw_text = rec.value("text", std::string{});
    m.url_count = count_url_tokens(raw_text);
    m.text = normalize_export_text(raw_text);

    if (rec.contains("thread_ts") && rec["thread_ts"].is_string()) {
        try {
            m.thread_parent = SlackTs::parse(rec["thread_ts"].get<std::string>());
        } catch (const CorpusError& e) {
            throw ParseError(file_entry, "record " + std::to_string(index) + " in channel " +
                                             channel_id + ": " + e.what());
        }
    }

    if (rec.contains("reactions") && rec["reactions"].is_array()) {
        for (const json& r : rec["reactions"]) {
            Reaction reaction;
            reaction.name = r.value("name", std::string{});
            if (reaction.name.empty()) continue;
            if (r.contains("users") && r["users"].is_array())
                for (const json& u : r["users"])
                    if (u.is_string()) reaction.user_ids.push_back(u.get<std::string>());
            if (!reaction.user_ids.empty())
                reaction.count = static_cast<std::uint32_t>(reaction.user_ids.size());
            else
                reaction.count = r.value("count", 0u);
            if (reaction.count > 0) m.reactions.push_back(std::move(reaction));
        }
    }

    if (rec.contains("files") && rec["files"].is_array())
        m.file_count = static_cast<std::uint32_t>(rec["files"].size());
    m.edited = rec.contains("edited") && !rec["edited"].is_null();
    if (rec.contains("subtype") && rec["subtype"].is_string())
        m.subtype = rec["subtype"].get<std::string>();

    return m;
}

Corpus parse_from_source(const ExportSource& source, const std::string& team_id) {
    Corpus corpus;
    corpus.team_id = team_id;

    const std::vector<std::string> all_entries = source.entries();
    auto has_entry = [&](const std::string& name) {
        return std::binary_search(all_entries.begin(), all_entries.end(), name);
    };
    for (const char* manifest : {"channels.json", "users.json"})
        if (!has_entry(manifest))
            throw ParseError(manifest, "missing from export");

    json users_doc = parse_json_document(source, "users.json");
    if (!users_doc.is_array()) throw ParseError("users.json", "expected a JSON array");
    for (const json& user : users_doc) {
        if (!user.contains("id") || !user["id"].is_string()) continue;
        UserInfo info;
        info.display_name = user_display_name(user);
        corpus.users.emplace(user["id"].get<std::string>(), std::move(info));
    }

    json channels_doc = parse_json_document(source, "channels.json");
    if (!channels_doc.is_array()) throw ParseError("channels.json", "expected a JSON array");
    std::map<std::string, std::string> dir_to_channel;  // directory name -> channel id
    for (const json& channel : channels_doc) {
        if (!channel.contains("id") || !channel["id"].is_string())
            throw ParseError("channels.json", "channel record without id");
        std::string id = channel["id"].get<std::string>();
        std::string name = channel.value("name", id);
        corpus.channels.emplace(id, name);
        corpus.messages.emplace(id, std::vector<Message>{});
        dir_to_channel.emplace(name, id);
    }

    for (const std::string& entry : all_entries) {
        auto slash = entry.find('/');
        if (slash == std::string::npos) continue;  // manifest-level file
        if (entry.size() < 5 || entry.compare(entry.size() - 5, 5, ".json") != 0) continue;
        std::string dir = entry.substr(0, slash);
        auto ch = dir_to_channel.find(dir);
        if (ch == dir_to_channel.end()) continue;  // not a known channel directory
        const std::string& channel_id = ch->second;

        json day_doc = parse_json_document(source, entry);
        if (!day_doc.is_array()) throw ParseError(entry, "expected a JSON array");
        std::size_t index = 0;
        for (const json& rec : day_doc) {
            if (!rec.is_object())
                throw ParseError(entry, "record " + std::to_string(index) + " in channel " +
                                            channel_id + ": not an object");
            corpus.messages[channel_id].push_back(
                parse_message_record(rec, channel_id, entry, index));
            ++index;
        }
    }

    for (auto& [channel_id, msgs] : corpus.messages) {
        std::sort(msgs.begin(), msgs.end(),
                  [](const Message& a, const Message& b) { return a.ts < b.ts; });
        for (std::size_t i = 1; i < msgs.size(); ++i)
            if (msgs[i].ts == msgs[i - 1].ts)
                throw ParseError("channel " + channel_id,
                                 "duplicate timestamp " + msgs[i].ts.str());
        for (const Message& m : msgs) {
            if (m.author && !corpus.users.count(*m.author)) {
                // Author missing from users.json: record as an unknown user so
                // the roster stays closed over message authors.
                UserInfo info;
                info.display_name = *m.author;
                corpus.users.emplace(*m.author, std::move(info));
            }
        }
    }

    return corpus;
}

}  // namespace

Corpus parse_export(const std::filesystem::path& archive_path) {
    return parse_export(archive_path, archive_path.stem().string());
}

Corpus parse_export(const std::filesystem::path& archive_path, const std::string& team_id) {
    if (std::filesystem::is_directory(archive_path)) {
        DirSource source(archive_path);
        return parse_from_source(source, team_id);
    }
    if (std::filesystem::is_regular_file(archive_path)) {
        if (!zip::looks_like_zip(archive_path))
            throw ParseError(archive_path.string(), "not a zip archive or export directory");
        try {
            ZipSource source(archive_path);
            return parse_from_source(source, team_id);
        } catch (const zip::ZipError& e) {
            throw ParseError(archive_path.string(), e.what());
        }
    }
    throw ParseError(archive_path.string(), "export path does not exist");
}

}  // namespace psmine
