#include "psmine/corpus_json.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psmine/version.hpp"

namespace psmine {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json message_to_json(const Message& m) {
    ordered_json j;
    j["ts"] = m.ts.str();
    j["author"] = m.author ? ordered_json(*m.author) : ordered_json(nullptr);
    j["text"] = m.text;
    j["thread_parent"] = m.thread_parent ? ordered_json(m.thread_parent->str()) : ordered_json(nullptr);
    ordered_json reactions = ordered_json::array();
    for (const auto& r : m.reactions) {
        ordered_json rj;
        rj["name"] = r.name;
        rj["users"] = r.user_ids;
        rj["count"] = r.count;
        reactions.push_back(std::move(rj));
    }
    j["reactions"] = std::move(reactions);
    j["files"] = m.file_count;
    j["urls"] = m.url_count;
    j["edited"] = m.edited;
    j["subtype"] = m.subtype ? ordered_json(*m.subtype) : ordered_json(nullptr);
    return j;
}

Message message_from_json(const ordered_json& j, const std::string& channel_id) {
    Message m;
    m.channel_id = channel_id;
    m.ts = SlackTs::parse(j.at("ts").get<std::string>());
    if (!j.at("author").is_null()) m.author = j.at("author").get<std::string>();
    m.text = j.at("text").get<std::string>();
    if (!j.at("thread_parent").is_null())
        m.thread_parent = SlackTs::parse(j.at("thread_parent").get<std::string>());
    for (const auto& rj : j.at("reactions")) {
        Reaction r;
        r.name = rj.at("name").get<std::string>();
        r.user_ids = rj.at("users").get<std::vector<std::string>>();
        r.count = rj.at("count").get<std::uint32_t>();
        m.reactions.push_back(std::move(r));
    }
    m.file_count = j.at("files").get<std::uint32_t>();
    m.url_count = j.at("urls").get<std::uint32_t>();
    m.edited = j.at("edited").get<bool>();
    if (!j.at("subtype").is_null()) m.subtype = j.at("subtype").get<std::string>();
    return m;
}

}  // namespace

std::string corpus_to_json(const Corpus& corpus) {
    ordered_json j;
    j["schema"] = kCorpusSchema;
    j["team_id"] = corpus.team_id;

    ordered_json users = ordered_json::object();
    for (const auto& [id, info] : corpus.users) {
        ordered_json u;
        u["name"] = info.display_name;
        u["consented"] = info.consented;
        users[id] = std::move(u);
    }
    j["users"] = std::move(users);

    ordered_json channels = ordered_json::object();
    for (const auto& [id, name] : corpus.channels) channels[id] = name;
    j["channels"] = std::move(channels);

    ordered_json messages = ordered_json::object();
    for (const auto& [channel_id, msgs] : corpus.messages) {
        ordered_json list = ordered_json::array();
        for (const auto& m : msgs) list.push_back(message_to_json(m));
        messages[channel_id] = std::move(list);
    }
    j["messages"] = std::move(messages);

    return j.dump(2) + "\n";
}

Corpus corpus_from_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw CorpusError("corpus dump: malformed JSON");
    if (j.value("schema", std::string{}) != kCorpusSchema)
        throw CorpusError("corpus dump: unexpected schema marker");

    Corpus corpus;
    corpus.team_id = j.at("team_id").get<std::string>();
    for (const auto& [id, u] : j.at("users").items()) {
        UserInfo info;
        info.display_name = u.at("name").get<std::string>();
        info.consented = u.at("consented").get<bool>();
        corpus.users.emplace(id, std::move(info));
    }
    for (const auto& [id, name] : j.at("channels").items())
        corpus.channels.emplace(id, name.get<std::string>());
    for (const auto& [channel_id, list] : j.at("messages").items()) {
        std::vector<Message> msgs;
        msgs.reserve(list.size());
        for (const auto& mj : list) msgs.push_back(message_from_json(mj, channel_id));
        corpus.messages.emplace(channel_id, std::move(msgs));
    }
    return corpus;
}

void write_corpus_json(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write " + path.string());
    out << corpus_to_json(corpus);
}

Corpus read_corpus_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return corpus_from_json(ss.str());
}

}  // namespace psmine
