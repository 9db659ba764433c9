use std::io;

fn main() {
    let env = std::env::var(homnorden::app::BINDINGS_ENV).ok();
    let code = homnorden::app::run(std::env::args_os(), env.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
