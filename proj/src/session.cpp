#include "mfkit/session.hpp"

#include <stdexcept>

#include "mfkit/field.hpp"

namespace mfkit {

bool apply_field_tag(const std::string& tag) {
  if (tag == "q") return true;
  if (tag.rfind("fp:", 0) == 0) {
    unsigned long long p = std::stoull(tag.substr(3));
    if (p < 3 || p >= (1ull << 31))
      throw std::invalid_argument("field: modulus out of range: " + tag);
    // trial division is plenty for a one-off check of a 31-bit modulus
    for (unsigned long long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field: modulus is composite: " + tag);
    Fp::set_modulus(p);
    return false;
  }
  throw std::invalid_argument("field: expected 'q' or 'fp:P', got '" + tag + "'");
}

std::string default_share_dir() {
#ifdef MFKIT_DEFAULT_SHARE_DIR
  return MFKIT_DEFAULT_SHARE_DIR;
#else
  return "share";
#endif
}

MemoCache& MemoCache::instance() {
  static MemoCache c;
  return c;
}

void MemoCache::set_enabled(bool on) {
  std::lock_guard<std::mutex> g(mu_);
  enabled_ = on;
  if (!on) table_.clear();
}

bool MemoCache::lookup(const std::string& key, std::shared_ptr<void>& out) const {
  std::lock_guard<std::mutex> g(mu_);
  if (!enabled_) return false;
  auto it = table_.find(key);
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void MemoCache::insert(const std::string& key, std::shared_ptr<void> value) {
  std::lock_guard<std::mutex> g(mu_);
  if (!enabled_) return;
  table_.emplace(key, std::move(value));
}

void MemoCache::clear() {
  std::lock_guard<std::mutex> g(mu_);
  table_.clear();
}

}  // namespace mfkit
