/// Left-aligned columns separated by two spaces; trailing padding trimmed.
pub fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s.push_str(c);
            if i + 1 < cols {
                s.push_str(&" ".repeat(widths[i] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// `key  value` lines with aligned values.
pub fn pairs<K: AsRef<str>, V: AsRef<str>>(items: impl IntoIterator<Item = (K, V)>) -> String {
    let items: Vec<(K, V)> = items.into_iter().collect();
    let w = items.iter().map(|(k, _)| k.as_ref().chars().count()).max().unwrap_or(0);
    items.iter().map(|(k, v)| format!("{:<w$}  {}\n", k.as_ref(), v.as_ref())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_columns() {
        let t = render(&["n", "class"], &[vec!["(1, 1)".into(), "violation".into()]]);
        assert_eq!(t, "n       class\n------  ---------\n(1, 1)  violation\n");
        assert_eq!(pairs([("a", "1"), ("bcd", "2")]), "a    1\nbcd  2\n");
    }
}
