#ifndef LZDEC_ERRORS_HPP_INCLUDED
#define LZDEC_ERRORS_HPP_INCLUDED

#include <cstring>
#include <stdexcept>
#include <string>

namespace lzdec {

// Operating-system level I/O failure, annotated with the stream name.
class io_error : public std::runtime_error {
  public:
    io_error(const std::string &stream, const std::string &what, int err = 0)
        : std::runtime_error("io error on stream '" + stream + "': " + what +
                             (err ? std::string(": ") + std::strerror(err) : std::string())),
          m_stream(stream) {}
    const std::string &stream() const { return m_stream; }

  private:
    std::string m_stream;
};

// Malformed or out-of-range data in an on-disk format.
class format_error : public std::runtime_error {
  public:
    explicit format_error(const std::string &what)
        : std::runtime_error("format error: " + what) {}
};

// A caller violated a documented precondition of an in-process API.
class contract_error : public std::logic_error {
  public:
    explicit contract_error(const std::string &what)
        : std::logic_error("contract violation: " + what) {}
};

// RAM or disk budget that cannot accommodate the requested run.
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string &what)
        : std::runtime_error("budget error: " + what) {}
};

// Internal invariant failure: indicates a bug in a decoder, not bad input.
class invariant_error : public std::logic_error {
  public:
    explicit invariant_error(const std::string &what)
        : std::logic_error("internal invariant failure: " + what) {}
};

}  // namespace lzdec

#endif  // LZDEC_ERRORS_HPP_INCLUDED
