#include "evotune/subprocess.hpp"

#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace evotune {

namespace {

void ignore_sigpipe_once() {
    static const bool done = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

}  // namespace

Subprocess::Subprocess(const std::string& command) {
    ignore_sigpipe_once();
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw SubprocessError("subprocess: pipe failed: " + std::string(std::strerror(errno)));
    pid_ = fork();
    if (pid_ < 0) throw SubprocessError("subprocess: fork failed");
    if (pid_ == 0) {
        setpgid(0, 0);  // own process group, so shutdown can kill sh's children too
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    setpgid(pid_, pid_);  // both sides race to set it; either one suffices
    close(to_child[0]);
    close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
}

Subprocess::~Subprocess() { shutdown(); }

void Subprocess::note(char direction, const std::string& line) {
    transcript_.push_back(std::string(1, direction) + " " + line);
    while (transcript_.size() > 20) transcript_.pop_front();
}

std::string Subprocess::transcript_tail() const {
    std::string out;
    for (const std::string& line : transcript_) {
        out += "\n  ";
        out += line;
    }
    return out.empty() ? std::string("\n  (no traffic)") : out;
}

void Subprocess::write_line(const std::string& line) {
    if (to_child_ < 0) throw SubprocessError("subprocess: stdin already closed");
    note('>', line);
    std::string data = line + "\n";
    std::size_t written = 0;
    while (written < data.size()) {
        ssize_t n = write(to_child_, data.data() + written, data.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw SubprocessError("subprocess: write failed (" +
                                  std::string(std::strerror(errno)) + "), conversation:" +
                                  transcript_tail());
        }
        written += static_cast<std::size_t>(n);
    }
}

bool Subprocess::read_line(std::string& line, int timeout_ms) {
    for (;;) {
        std::size_t newline = buffer_.find('\n');
        if (newline != std::string::npos) {
            line = buffer_.substr(0, newline);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            buffer_.erase(0, newline + 1);
            note('<', line);
            return true;
        }
        struct pollfd pfd{from_child_, POLLIN, 0};
        int ready = poll(&pfd, 1, timeout_ms);
        if (ready == 0) return false;
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw SubprocessError("subprocess: poll failed: " +
                                  std::string(std::strerror(errno)));
        }
        char chunk[4096];
        ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n > 0) {
            buffer_.append(chunk, static_cast<std::size_t>(n));
            continue;
        }
        if (n < 0 && errno == EINTR) continue;
        throw SubprocessError("subprocess: child closed its output, conversation:" +
                              transcript_tail());
    }
}

bool Subprocess::running() {
    if (pid_ < 0) return false;
    int status = 0;
    pid_t r = waitpid(pid_, &status, WNOHANG);
    if (r == pid_) {
        pid_ = -1;
        return false;
    }
    return true;
}

void Subprocess::shutdown() {
    if (to_child_ >= 0) {
        close(to_child_);
        to_child_ = -1;
    }
    if (pid_ >= 0) {
        // Give the child a moment to exit on EOF, then force it.
        for (int i = 0; i < 20 && running(); ++i) usleep(10000);
        if (pid_ >= 0) {
            kill(-pid_, SIGKILL);  // whole group: sh plus whatever it spawned
            kill(pid_, SIGKILL);
            waitpid(pid_, nullptr, 0);
            pid_ = -1;
        }
    }
    if (from_child_ >= 0) {
        close(from_child_);
        from_child_ = -1;
    }
}

}  // namespace evotune
