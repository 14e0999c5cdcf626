#include <cstdint>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "pqw/server.h"

namespace pqw {

namespace {

using nlohmann::json;

constexpr int32_t kDeltaBound = 1 << 20;

[[noreturn]] void corrupt(const std::string& why) {
    throw Error(ErrorCode::StoreCorrupt, why);
}

Digest32 hex32_field(const json& v, const char* name) {
    if (!v.is_string()) corrupt(std::string(name) + ": expected a hex string");
    try {
        return parse_hex32(v.get_ref<const std::string&>(), name);
    } catch (const Error& e) {
        corrupt(e.what());
    }
}

}  // namespace

std::string encode_record(const ServerRecord& rec) {
    json j;
    j["created_at"] = rec.created_at;
    j["delta2"] = rec.delta2;
    if (rec.k_auth) j["k_auth"] = to_hex(rec.k_auth->data(), rec.k_auth->size());
    j["omega2"] = to_hex(rec.omega2.data(), rec.omega2.size());
    j["uid"] = to_hex(rec.uid.data(), rec.uid.size());
    j["version"] = rec.version;
    std::string body = j.dump();
    char trail[20];
    std::snprintf(trail, sizeof trail, " crc32:%08x",
                  crc32(reinterpret_cast<const uint8_t*>(body.data()), body.size()));
    return body + trail;
}

ServerRecord decode_record(const std::string& line) {
    static const std::string tag = " crc32:";
    if (line.size() < tag.size() + 8) corrupt("line too short for a checksum trailer");
    size_t pos = line.size() - (tag.size() + 8);
    if (line.compare(pos, tag.size(), tag) != 0) corrupt("missing checksum trailer");

    uint32_t want = 0;
    for (size_t i = pos + tag.size(); i < line.size(); ++i) {
        char c = line[i];
        int nib;
        if (c >= '0' && c <= '9') nib = c - '0';
        else if (c >= 'a' && c <= 'f') nib = 10 + c - 'a';
        else corrupt("malformed checksum");
        want = (want << 4) | uint32_t(nib);
    }
    std::string body = line.substr(0, pos);
    if (crc32(reinterpret_cast<const uint8_t*>(body.data()), body.size()) != want)
        corrupt("checksum mismatch");

    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) corrupt("invalid json");
    for (const auto& item : j.items()) {
        if (item.key() != "created_at" && item.key() != "delta2" &&
            item.key() != "k_auth" && item.key() != "omega2" &&
            item.key() != "uid" && item.key() != "version")
            corrupt(item.key() + ": unknown field");
    }
    for (const char* name : {"created_at", "delta2", "omega2", "uid", "version"}) {
        if (!j.contains(name)) corrupt(std::string(name) + ": missing field");
    }

    ServerRecord rec;
    rec.uid = hex32_field(j["uid"], "uid");

    if (!j["version"].is_number_integer()) corrupt("version: expected an integer");
    int64_t ver = j["version"].get<int64_t>();
    if (ver < 1 || ver > INT32_MAX) corrupt("version: out of range");
    rec.version = int(ver);

    const json& d = j["delta2"];
    if (!d.is_array() || d.size() != size_t(kLatticeM)) corrupt("delta2: expected 16 entries");
    for (size_t i = 0; i < size_t(kLatticeM); ++i) {
        if (!d[i].is_number_integer()) corrupt("delta2: expected integer entries");
        int64_t x = d[i].get<int64_t>();
        if (x < -kDeltaBound || x > kDeltaBound) corrupt("delta2: entry out of range");
        rec.delta2[i] = int32_t(x);
    }

    rec.omega2 = hex32_field(j["omega2"], "omega2");

    if (!j["created_at"].is_number_integer()) corrupt("created_at: expected an integer");
    rec.created_at = j["created_at"].get<int64_t>();
    if (rec.created_at < 0) corrupt("created_at: out of range");

    if (j.contains("k_auth")) rec.k_auth = hex32_field(j["k_auth"], "k_auth");
    return rec;
}

RecordStore::RecordStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in.is_open()) return;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        try {
            if (line.empty()) corrupt("empty line");
            ServerRecord rec = decode_record(line);
            std::string key = to_hex(rec.uid.data(), rec.uid.size());
            if (!records_.emplace(key, rec).second) corrupt("duplicate uid");
        } catch (const Error& e) {
            throw Error(ErrorCode::StoreCorrupt,
                        path_ + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::optional<ServerRecord> RecordStore::get(const Digest32& uid) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = records_.find(to_hex(uid.data(), uid.size()));
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

bool RecordStore::create(const ServerRecord& rec) {
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, fresh] = records_.emplace(to_hex(rec.uid.data(), rec.uid.size()), rec);
    if (!fresh) return false;
    persist();
    return true;
}

void RecordStore::update(const ServerRecord& rec) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = records_.find(to_hex(rec.uid.data(), rec.uid.size()));
    if (it == records_.end())
        throw Error(ErrorCode::ParameterError, "update of a record that was never created");
    it->second = rec;
    persist();
}

size_t RecordStore::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return records_.size();
}

void RecordStore::persist() const {
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out.is_open())
            throw Error(ErrorCode::StoreCorrupt, "cannot write " + tmp);
        for (const auto& [key, rec] : records_) out << encode_record(rec) << '\n';
        out.flush();
        if (!out.good())
            throw Error(ErrorCode::StoreCorrupt, "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path_.c_str()) != 0)
        throw Error(ErrorCode::StoreCorrupt, "cannot replace " + path_);
}

}  // namespace pqw
