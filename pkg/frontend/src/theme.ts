// Background theme: large pictures on a white background by default, with
// DARK and HIGH_CONTRAST alternatives. The choice is kept in localStorage so
// it survives a reload even before the profile round-trip completes.

export const THEMES = ["LIGHT", "DARK", "HIGH_CONTRAST"] as const;
export type Theme = (typeof THEMES)[number];

const STORAGE_KEY = "pecs.theme";

export function loadTheme(): Theme {
  const stored = localStorage.getItem(STORAGE_KEY);
  return THEMES.includes(stored as Theme) ? (stored as Theme) : "LIGHT";
}

export function applyTheme(theme: Theme): void {
  document.body.dataset.theme = theme;
}

export function setTheme(theme: Theme): void {
  localStorage.setItem(STORAGE_KEY, theme);
  applyTheme(theme);
}
