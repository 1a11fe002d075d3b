#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpatch/vpatch.h"

namespace cli {

// library call failed; carries the status code
struct call_error : std::runtime_error {
    int status;
    call_error(int s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

// bad input detected by the front end itself
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check(int status, const char* what)
{
    if (status != VP_OK)
        throw call_error(status, std::string(what) + ": " + vp_last_error());
}

uint64_t fnv1a(const std::string& s);
std::string hex64(uint64_t h);

std::string num(double x);
std::string quote(const std::string& s);

// output file, or stdout when path is empty; relative paths go under VPATCH_OUTDIR when set
class Output {
public:
    explicit Output(const std::string& path);
    ~Output();
    Output(const Output&) = delete;
    Output& operator=(const Output&) = delete;

    void line(const std::string& s);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    FILE* f_ = nullptr;
};

class CsvWriter {
public:
    CsvWriter(Output& out, const std::string& command, const std::string& hash, const std::vector<std::string>& cols);
    void row(const std::vector<double>& v);
    void row(const std::vector<std::string>& v);

private:
    Output& out_;
    size_t ncols_;
};

// key = value report lines
class Report {
public:
    Report(Output& out, const std::string& command, const std::string& hash);
    void put(const std::string& key, double v);
    void put(const std::string& key, long v);
    void put(const std::string& key, const std::string& v);

private:
    Output& out_;
};

// domain handle from a kind name or a descriptor file
struct DomainArgs {
    std::string domain = "disc";
    double a = 2.0;
    double aspect = 0.6;
    int m = 2;
};

class Domain {
public:
    explicit Domain(const DomainArgs& args);
    explicit Domain(vp_domain* d) : d_(d) {}
    ~Domain() { vp_domain_destroy(d_); }
    Domain(const Domain&) = delete;
    Domain& operator=(const Domain&) = delete;

    const vp_domain* get() const { return d_; }
    std::string describe() const;
    bool is_disc() const { return describe() == "kind=disc"; }

private:
    vp_domain* d_ = nullptr;
};

// descriptor file: key = value lines, '#' comments
std::map<std::string, std::string> read_key_values(const std::string& path);

// run fn(i) for i in [0, n) on a pool of jobs threads
template <class F>
void parallel_for(int n, int jobs, F&& fn);

}  // namespace cli

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

template <class F>
void cli::parallel_for(int n, int jobs, F&& fn)
{
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!first)
                        first = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (first)
        std::rethrow_exception(first);
}
