#ifndef NTLF_TESTS_SUPPORT_TOUCHSTONE_READER_HPP
#define NTLF_TESTS_SUPPORT_TOUCHSTONE_READER_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace ntlf::testsupport {

/// Minimal conformant Touchstone v1 two-port reader, kept independent of
/// the production writer so round-trip tests exercise the actual format.
struct TouchstoneFile {
    std::string option_line;                 // the raw `#` line
    double z_ref = 0.0;                      // R value from the option line
    std::vector<std::string> comments;       // `!` lines, in order
    std::vector<std::array<double, 9>> rows; // f, re/im s11, s21, s12, s22
};

TouchstoneFile read_touchstone(const std::filesystem::path& path);

} // namespace ntlf::testsupport

#endif
