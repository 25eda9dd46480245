#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace indprior {

/// Locale-independent "%.*g" rendering.
std::string format_double(double v, int precision = 12);

/// Flat key=value configuration file; '#' starts a comment, blank lines are
/// skipped. Throws std::runtime_error if the file cannot be read.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// FNV-1a hash of a canonical key=value rendering, used as the provenance
/// config hash in output headers.
std::uint64_t config_hash(const std::map<std::string, std::string>& kv);

/// Single '#'-prefixed provenance line for CSV outputs.
std::string provenance_line(const std::string& command, std::uint64_t seed,
                            const std::map<std::string, std::string>& options);

/// Runs fn(i) for i in [0, n) on up to `threads` workers; each index's work
/// must be independent.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace indprior
