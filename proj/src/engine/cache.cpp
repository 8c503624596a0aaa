#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctllint/engine.hpp"

namespace ctllint::engine {
namespace {

bool is_key(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && !(c >= 'a' && c <= 'f')) return false;
  return true;
}

// "<key> <length>"; nullopt when the line is not a record header.
std::optional<std::pair<std::string, std::size_t>> record_header(std::string_view line) {
  if (line.size() < 66 || line[64] != ' ' || !is_key(line.substr(0, 64))) return std::nullopt;
  std::string_view num = line.substr(65);
  if (num.empty() || num.size() > 12) return std::nullopt;
  std::size_t n = 0;
  for (char c : num) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return std::pair{std::string(line.substr(0, 64)), n};
}

void write_record(std::ostream& os, const std::string& key, const std::string& payload) {
  os << key << ' ' << payload.size() << '\n' << payload << '\n';
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 && EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Cache::Cache(std::string path) : path_(std::move(path)) {
  std::error_code ec;
  if (!std::filesystem::exists(path_, ec)) return;
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw IoError("cannot read cache db '" + path_ + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  existed_ = true;
  load(ss.str());
}

void Cache::load(const std::string& text) {
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos || std::string_view(text).substr(0, pos) != kHeader) {
    events_.push_back("cache db '" + path_ + "' has no valid header; starting empty");
    rewrite_ = true;
    return;
  }
  ++pos;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        std::string_view(text).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    auto hdr = record_header(line);
    bool good = false;
    if (hdr && eol != std::string::npos) {
      std::size_t start = eol + 1;
      std::size_t end = start + hdr->second;
      if (end < text.size() && text[end] == '\n') {
        entries_[hdr->first] = text.substr(start, hdr->second);
        pos = end + 1;
        good = true;
      }
    }
    if (good) continue;
    events_.push_back("corrupt cache record at byte " + std::to_string(pos) + "; skipped");
    rewrite_ = true;
    // Resynchronize on the next line that looks like a record header.
    for (;;) {
      if (eol == std::string::npos) {
        pos = text.size();
        break;
      }
      pos = eol + 1;
      eol = text.find('\n', pos);
      std::string_view next =
          std::string_view(text).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
      if (record_header(next)) break;
    }
  }
}

std::optional<std::string> Cache::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Cache::store(const std::string& key, std::string payload) {
  auto [it, inserted] = entries_.insert_or_assign(key, std::move(payload));
  if (!inserted) rewrite_ = true;  // replacing an entry: the old record must go
  pending_.push_back(key);
}

void Cache::invalidate(const std::string& key, const std::string& why) {
  if (entries_.erase(key)) {
    events_.push_back("cache entry " + key.substr(0, 12) + " unusable (" + why + "); dropped");
    rewrite_ = true;
  }
}

void Cache::flush() {
  if (!rewrite_ && pending_.empty() && existed_) return;
  namespace fs = std::filesystem;
  if (rewrite_ || !existed_) {
    std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write cache db '" + path_ + "'");
      out << kHeader << '\n';
      for (const auto& [k, v] : entries_) write_record(out, k, v);
      if (!out.flush()) throw IoError("cannot write cache db '" + path_ + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path_, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw IoError("cannot write cache db '" + path_ + "'");
    }
  } else {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot write cache db '" + path_ + "'");
    std::set<std::string> seen;
    for (const auto& k : pending_)
      if (seen.insert(k).second) write_record(out, k, entries_.at(k));
    if (!out.flush()) throw IoError("cannot write cache db '" + path_ + "'");
  }
  pending_.clear();
  rewrite_ = false;
  existed_ = true;
}

}  // namespace ctllint::engine
