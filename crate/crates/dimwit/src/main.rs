fn main() {
    // Restore default SIGPIPE handling so piping into `head` and friends
    // terminates quietly instead of panicking on a closed stdout.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(dimwit::cli::run());
}
