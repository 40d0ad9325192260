#include "roomcraft/extraction.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <set>
#include <sstream>

#include "roomcraft/errors.hpp"

// httplib pulls in sockets; keep it out of the header.
#include "httplib.h"

namespace roomcraft {

using nlohmann::json;

const std::vector<PromptTemplate>& default_templates() {
    static const std::vector<PromptTemplate> templates = {
        {"room_type_classification",
         "Classify the room type of the scene described below. Respond with JSON only:\n"
         "{\"room_type\": \"living_room\" | \"bathroom\" | \"dining_room\" | \"kitchen\" | "
         "\"bedroom\"}\n\nInput:\n{input}"},
        {"furniture_enumeration",
         "List every furniture item in the scene described below, with quantities. Respond with "
         "JSON only:\n{\"furniture\": [{\"id\": string, \"category\": string, \"count\": "
         "integer}]}\n\nInput:\n{input}"},
        {"spatial_relationship_analysis",
         "Identify spatial relations between the furniture items and the room architecture in "
         "the scene below. Allowed relations: against_wall, near_wall, away_from_wall, corner, "
         "ceiling_mounted, on_floor, in_front_of, behind, left_of, right_of, face_to_face, "
         "back_to_back, side_by_side, aligned_with, on_top_of, touching, near, far_from, "
         "distance_range. Architectural ids: wall:north, wall:south, wall:east, wall:west, "
         "floor, ceiling. Respond with JSON only:\n{\"relations\": [{\"subject\": id, "
         "\"object\": id, \"relation\": string, \"params\": {}}]}\n\nInput:\n{input}"},
        {"constraint_formalization",
         "Formalize the scene described below as a complete roomcraft/1 scene document. Respond "
         "with JSON only, using exactly this schema:\n{\"schema\": \"roomcraft/1\", "
         "\"room_type\": string, \"furniture\": [{\"id\", \"category\", \"count\", \"size\": "
         "{\"w\", \"d\", \"h\"}, \"color\", \"material\", \"mount\"}], \"relations\": "
         "[{\"subject\", \"object\", \"relation\", \"params\"}]}\n\nInput:\n{input}"},
    };
    return templates;
}

std::string render_template(const PromptTemplate& tmpl, const std::string& input) {
    const std::string placeholder = "{input}";
    const size_t first = tmpl.body.find(placeholder);
    if (first == std::string::npos ||
        tmpl.body.find(placeholder, first + 1) != std::string::npos) {
        throw SchemaViolation("template '" + tmpl.name +
                              "' must contain exactly one {input} placeholder");
    }
    std::string out = tmpl.body;
    out.replace(first, placeholder.size(), input);
    return out;
}

// ------------------------------------------------------------ mock provider

namespace {

struct Mention {
    std::string category;
    size_t token = 0;
    int count = 1;
    Mount mount = Mount::floor;
};

struct MockAnalysis {
    std::string room_type = "living_room";
    std::vector<Mention> items;            // deduped by category, text order
    std::vector<RelationEdge> relations;
};

const std::vector<std::pair<std::string, std::string>>& vocab() {
    // Synonym -> category; longest names first so "armchair" beats "chair".
    static const std::vector<std::pair<std::string, std::string>> words = {
        {"kitchen island", "kitchen_island"},
        {"dining table", "dining_table"},
        {"coffee table", "coffee_table"},
        {"ceiling lamp", "ceiling_lamp"},
        {"nightstand", "nightstand"},
        {"television", "tv"},
        {"bookshelf", "bookshelf"},
        {"wardrobe", "wardrobe"},
        {"armchair", "armchair"},
        {"painting", "painting"},
        {"bathtub", "bathtub"},
        {"dresser", "dresser"},
        {"cabinet", "cabinet"},
        {"counter", "counter"},
        {"shower", "shower"},
        {"fridge", "fridge"},
        {"mirror", "mirror"},
        {"toilet", "toilet"},
        {"couch", "sofa"},
        {"chair", "chair"},
        {"plant", "plant"},
        {"stove", "stove"},
        {"table", "table"},
        {"desk", "desk"},
        {"lamp", "lamp"},
        {"sink", "sink"},
        {"sofa", "sofa"},
        {"vase", "vase"},
        {"bed", "bed"},
        {"cup", "cup"},
        {"tv", "tv"},
    };
    return words;
}

int count_word(const std::string& tok) {
    static const std::map<std::string, int> words = {
        {"one", 1}, {"two", 2}, {"three", 3}, {"four", 4}, {"five", 5}, {"six", 6},
        {"seven", 7}, {"eight", 8}, {"nine", 9}, {"ten", 10}};
    const auto it = words.find(tok);
    if (it != words.end()) return it->second;
    if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
        return std::stoi(tok);
    }
    return 0;
}

bool is_wall_word(const std::string& tok) {
    return tok == "north" || tok == "south" || tok == "east" || tok == "west";
}

MockAnalysis analyze(const std::string& raw) {
    MockAnalysis out;
    std::string text = raw;
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    for (const auto& [name, type] :
         std::vector<std::pair<std::string, std::string>>{{"living room", "living_room"},
                                                          {"dining room", "dining_room"},
                                                          {"bathroom", "bathroom"},
                                                          {"bedroom", "bedroom"},
                                                          {"kitchen", "kitchen"}}) {
        const size_t pos = text.find(name);
        if (pos != std::string::npos) {
            out.room_type = type;
            text.replace(pos, name.size(), std::string(name.size(), ' '));
            break;
        }
    }

    // Tokenize, remembering which tokens are category mentions.
    std::vector<std::string> tokens;
    {
        std::string tok;
        for (char c : text + " ") {
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_') {
                tok += c;
            } else if (!tok.empty()) {
                tokens.push_back(tok);
                tok.clear();
            }
        }
    }
    // Multi-word vocab: join token pairs for lookup.
    std::map<size_t, std::string> mention_at;
    std::set<std::string> seen;
    for (size_t i = 0; i < tokens.size(); ++i) {
        std::string cat;
        for (const auto& [word, category] : vocab()) {
            const size_t space = word.find(' ');
            if (space == std::string::npos) {
                std::string t = tokens[i];
                if (t.size() > 1 && t.back() == 's') t.pop_back();  // crude plural
                if (t == word) cat = category;
            } else if (i + 1 < tokens.size() &&
                       tokens[i] == word.substr(0, space) &&
                       tokens[i + 1] == word.substr(space + 1)) {
                cat = category;
            }
            if (!cat.empty()) break;
        }
        if (cat.empty()) continue;
        mention_at[i] = cat;
        if (seen.insert(cat).second) {
            Mention m;
            m.category = cat;
            m.token = i;
            if (i > 0) {
                const int n = count_word(tokens[i - 1]);
                if (n > 0) m.count = n;
            }
            m.mount = catalog_entry(cat).mount;
            out.items.push_back(std::move(m));
        }
    }

    auto mention_before = [&](size_t i) -> std::string {
        std::string best;
        for (const auto& [pos, cat] : mention_at) {
            if (pos < i) best = cat;
            else break;
        }
        return best;
    };
    auto mention_after = [&](size_t i) -> std::string {
        for (const auto& [pos, cat] : mention_at) {
            if (pos > i) return cat;
        }
        return "";
    };
    auto add_relation = [&](const std::string& s, const std::string& o, RelationKind k,
                            std::map<std::string, double> params = {}) {
        if (s.empty() || o.empty() || s == o) return;
        out.relations.push_back({s, o, k, std::move(params)});
    };

    std::string last_pair_a, last_pair_b;
    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        auto next_is = [&](size_t off, const char* w) {
            return i + off < tokens.size() && tokens[i + off] == w;
        };
        if (t == "against" || t == "along") {
            // "<item> against the north wall"
            for (size_t j = i + 1; j < std::min(tokens.size(), i + 4); ++j) {
                if (is_wall_word(tokens[j])) {
                    add_relation(mention_before(i), "wall:" + tokens[j],
                                 RelationKind::against_wall);
                    break;
                }
                if (tokens[j] == "wall") {
                    add_relation(mention_before(i), "wall:south", RelationKind::against_wall);
                    break;
                }
            }
        } else if (t == "facing" || t == "faces" || t == "opposite") {
            const std::string a = mention_before(i);
            const std::string b = mention_after(i);
            add_relation(a, b, RelationKind::face_to_face);
            last_pair_a = a;
            last_pair_b = b;
        } else if (t == "front" && i > 0 && tokens[i - 1] == "in" && next_is(1, "of")) {
            add_relation(mention_before(i - 1), mention_after(i + 1), RelationKind::in_front_of);
        } else if (t == "behind") {
            add_relation(mention_before(i), mention_after(i), RelationKind::behind);
        } else if ((t == "left" || t == "right") && next_is(1, "of")) {
            add_relation(mention_before(i), mention_after(i),
                         t == "left" ? RelationKind::left_of : RelationKind::right_of);
        } else if (t == "beside" || (t == "next" && next_is(1, "to"))) {
            add_relation(mention_before(i), mention_after(i), RelationKind::side_by_side);
        } else if (t == "near") {
            bool wall = false;
            for (size_t j = i + 1; j < std::min(tokens.size(), i + 4); ++j) {
                if (is_wall_word(tokens[j])) {
                    add_relation(mention_before(i), "wall:" + tokens[j], RelationKind::near_wall);
                    wall = true;
                    break;
                }
            }
            if (!wall) add_relation(mention_before(i), mention_after(i), RelationKind::near);
        } else if (t == "corner") {
            add_relation(mention_before(i), "floor", RelationKind::corner);
        } else if (t == "on") {
            // "cup on the table" / "book on top of the desk"
            size_t j = i + 1;
            if (next_is(1, "top") && next_is(2, "of")) j = i + 3;
            for (; j < std::min(tokens.size(), i + 5); ++j) {
                const auto it = mention_at.find(j);
                if (it != mention_at.end()) {
                    const std::string subject = mention_before(i);
                    add_relation(subject, it->second, RelationKind::on_top_of);
                    for (Mention& m : out.items) {
                        if (m.category == subject) m.mount = Mount::on_top;
                    }
                    break;
                }
            }
        }
    }

    // "2 to 3.5 meters apart" / "between 2 and 3.5 meters": attach a
    // distance_range to the most recent related pair.
    static const std::regex range_re(
        R"(([0-9]+(?:\.[0-9]+)?)\s*(?:to|and)\s*([0-9]+(?:\.[0-9]+)?)\s*m(?:eters?)?\b)");
    std::smatch m;
    if (std::regex_search(text, m, range_re)) {
        std::string a = last_pair_a, b = last_pair_b;
        if (a.empty() && out.items.size() >= 2) {
            a = out.items[0].category;
            b = out.items[1].category;
        }
        const double lo = std::stod(m[1]);
        const double hi = std::stod(m[2]);
        add_relation(a, b, RelationKind::distance_range,
                     {{"min", std::min(lo, hi)}, {"max", std::max(lo, hi)}});
    }
    return out;
}

json furniture_json(const MockAnalysis& a) {
    json arr = json::array();
    for (const Mention& m : a.items) {
        json jf = {{"id", m.category}, {"category", m.category}};
        if (m.count != 1) jf["count"] = m.count;
        if (m.mount != catalog_entry(m.category).mount) jf["mount"] = to_string(m.mount);
        arr.push_back(std::move(jf));
    }
    return arr;
}

json relations_json(const MockAnalysis& a) {
    json arr = json::array();
    for (const RelationEdge& e : a.relations) {
        json je = {{"subject", e.subject}, {"object", e.object}, {"relation", to_string(e.relation)}};
        if (!e.params.empty()) {
            je["params"] = json::object();
            for (const auto& [k, v] : e.params) je["params"][k] = v;
        }
        arr.push_back(std::move(je));
    }
    return arr;
}

// The mock reads its input back out of the rendered prompt.
std::string input_of_rendered(const std::string& rendered) {
    const std::string marker = "Input:\n";
    const size_t pos = rendered.rfind(marker);
    return pos == std::string::npos ? rendered : rendered.substr(pos + marker.size());
}

}  // namespace

std::string MockProvider::complete(const PromptTemplate& tmpl, const std::string& rendered) {
    const MockAnalysis a = analyze(input_of_rendered(rendered));
    json j;
    if (tmpl.name == "room_type_classification") {
        j = {{"room_type", a.room_type}};
    } else if (tmpl.name == "furniture_enumeration") {
        j = {{"furniture", furniture_json(a)}};
    } else if (tmpl.name == "spatial_relationship_analysis") {
        j = {{"relations", relations_json(a)}};
    } else {
        j = {{"schema", "roomcraft/1"},
             {"room_type", a.room_type},
             {"furniture", furniture_json(a)},
             {"relations", relations_json(a)}};
    }
    return j.dump();
}

// ------------------------------------------------------------ http provider

HttpProvider::HttpProvider(std::string base_url, std::string api_key, std::string model)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), model_(std::move(model)) {}

std::string HttpProvider::complete(const PromptTemplate& tmpl, const std::string& rendered) {
    (void)tmpl;
    httplib::Client client(base_url_);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const json body = {{"model", model_},
                       {"messages", json::array({{{"role", "user"}, {"content", rendered}}})}};
    const auto res = client.Post("/v1/chat/completions", headers, body.dump(),
                                 "application/json");
    if (!res) {
        throw ProviderUnavailable("transport failure talking to " + base_url_);
    }
    if (res->status < 200 || res->status >= 300) {
        throw ProviderUnavailable("endpoint returned status " + std::to_string(res->status));
    }
    try {
        const json reply = json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw ProviderUnavailable(std::string("malformed completion envelope: ") + e.what());
    }
}

std::unique_ptr<ExtractionProvider> provider_from_env() {
    const char* url = std::getenv("ROOMCRAFT_LLM_URL");
    if (url && *url) {
        const char* key = std::getenv("ROOMCRAFT_LLM_KEY");
        const char* model = std::getenv("ROOMCRAFT_LLM_MODEL");
        return std::make_unique<HttpProvider>(url, key ? key : "", model ? model : "default");
    }
    return std::make_unique<MockProvider>();
}

// ----------------------------------------------------------------- extract

namespace {

// Monotone merge: later fragments may only add; conflicts are dropped with a
// warning.
void merge_fragment(json& doc, const json& fragment, const std::string& tmpl,
                    std::vector<std::string>& warnings) {
    if (fragment.contains("room_type") && fragment["room_type"].is_string()) {
        if (!doc.contains("room_type")) {
            doc["room_type"] = fragment["room_type"];
        } else if (doc["room_type"] != fragment["room_type"]) {
            warnings.push_back("template " + tmpl + " proposed conflicting room_type '" +
                               fragment["room_type"].get<std::string>() + "'; keeping '" +
                               doc["room_type"].get<std::string>() + "'");
        }
    }
    if (fragment.contains("furniture") && fragment["furniture"].is_array()) {
        for (const json& jf : fragment["furniture"]) {
            if (!jf.is_object() || !jf.contains("id")) continue;
            bool exists = false;
            for (const json& have : doc["furniture"]) {
                if (have["id"] == jf["id"]) exists = true;
            }
            if (exists) continue;
            doc["furniture"].push_back(jf);
        }
    }
    if (fragment.contains("relations") && fragment["relations"].is_array()) {
        std::set<std::string> known;
        for (const json& have : doc["furniture"]) known.insert(have["id"].get<std::string>());
        for (const json& je : fragment["relations"]) {
            if (!je.is_object() || !je.contains("subject") || !je.contains("object") ||
                !je.contains("relation")) {
                continue;
            }
            const std::string subject = je["subject"].get<std::string>();
            const std::string object = je["object"].get<std::string>();
            if (!known.count(subject) || (!known.count(object) && !is_architectural_id(object))) {
                warnings.push_back("template " + tmpl + " relation names unknown furniture '" +
                                   (known.count(subject) ? object : subject) + "'; dropped");
                continue;
            }
            bool exists = false;
            for (const json& have : doc["relations"]) {
                if (have["subject"] == je["subject"] && have["object"] == je["object"] &&
                    have["relation"] == je["relation"]) {
                    exists = true;
                }
            }
            if (!exists) doc["relations"].push_back(je);
        }
    }
}

}  // namespace

ParseResult extract(ExtractionProvider& provider, const std::string& input) {
    if (input.empty()) throw Error("PreconditionViolation", "extract input must be non-empty");

    std::unique_lock<std::mutex> guard(provider.serialization_mutex(), std::defer_lock);
    if (provider.exclusive()) guard.lock();

    json doc;
    doc["schema"] = "roomcraft/1";
    doc["furniture"] = json::array();
    doc["relations"] = json::array();
    std::vector<std::string> warnings;

    for (const PromptTemplate& tmpl : default_templates()) {
        const std::string rendered = render_template(tmpl, input);
        json fragment;
        bool parsed = false;
        for (int attempt = 0; attempt < 3 && !parsed; ++attempt) {  // initial + 2 retries
            const std::string reply = provider.complete(tmpl, rendered);
            try {
                fragment = json::parse(reply);
                parsed = fragment.is_object();
            } catch (const json::parse_error&) {
                parsed = false;
            }
        }
        if (!parsed) {
            throw ExtractionFailed("provider '" + provider.name() +
                                   "' returned unparseable output for template " + tmpl.name);
        }
        merge_fragment(doc, fragment, tmpl.name, warnings);
    }

    if (!doc.contains("room_type")) {
        throw ExtractionFailed("provider never produced a room_type");
    }

    try {
        ParseResult result = parse_scene_spec(doc.dump());
        result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
        return result;
    } catch (const Error& e) {
        throw ExtractionFailed("merged extraction is not a valid organization: " + e.detail());
    }
}

}  // namespace roomcraft
