// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/error.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace aimp::internal {

/// Runs a shell command with the given working directory, extra environment
/// entries ("NAME=value"), and stdout/stderr redirected to files. Returns
/// the exit code (or 128+signal when terminated by a signal).
inline int run_command(const std::string& command, const std::filesystem::path& cwd,
                       const std::vector<std::string>& extra_env,
                       const std::filesystem::path& stdout_path,
                       const std::filesystem::path& stderr_path) {
    pid_t pid = ::fork();
    if (pid < 0) {
        throw Error(ErrorKind::IoError, "fork failed");
    }
    if (pid == 0) {
        if (::chdir(cwd.c_str()) != 0) {
            _exit(127);
        }
        int out_fd = ::open(stdout_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        int err_fd = ::open(stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (out_fd < 0 || err_fd < 0 || ::dup2(out_fd, STDOUT_FILENO) < 0 ||
            ::dup2(err_fd, STDERR_FILENO) < 0) {
            _exit(127);
        }
        ::close(out_fd);
        ::close(err_fd);
        for (const auto& entry : extra_env) {
            auto eq = entry.find('=');
            if (eq != std::string::npos) {
                ::setenv(entry.substr(0, eq).c_str(), entry.substr(eq + 1).c_str(), 1);
            }
        }
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    int status = 0;
    if (::waitpid(pid, &status, 0) < 0) {
        throw Error(ErrorKind::IoError, "waitpid failed");
    }
    if (WIFEXITED(status)) {
        return WEXITSTATUS(status);
    }
    if (WIFSIGNALED(status)) {
        return 128 + WTERMSIG(status);
    }
    return 127;
}

} // namespace aimp::internal
