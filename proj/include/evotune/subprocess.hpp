#pragma once

#include <deque>
#include <stdexcept>
#include <string>

namespace evotune {

// Raised for child-process I/O trouble; the message carries the tail of the
// conversation so protocol failures are diagnosable.
struct SubprocessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A line-oriented child process over a pair of pipes, run via /bin/sh -c.
class Subprocess {
  public:
    explicit Subprocess(const std::string& command);
    ~Subprocess();

    Subprocess(const Subprocess&) = delete;
    Subprocess& operator=(const Subprocess&) = delete;

    void write_line(const std::string& line);

    // One line without its terminator; false on timeout. Throws once the
    // child is gone and the pipe is drained.
    bool read_line(std::string& line, int timeout_ms);

    bool running();

    // Last 20 exchanged lines, prefixed with "> " (sent) or "< " (received).
    std::string transcript_tail() const;

    // Closes stdin and reaps the child, escalating to SIGKILL if needed.
    void shutdown();

  private:
    void note(char direction, const std::string& line);

    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
    std::deque<std::string> transcript_;
};

}  // namespace evotune
