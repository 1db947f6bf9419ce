// Audio cue playback with an inspectable event log.
//
// Only one cue plays at a time: tapping a new card stops the previous cue.
// Every playback attempt is appended to `playbackEvents` so tests (and the
// session log) can observe what was cued without real speakers.

export type PlaybackEvent = {
  cardId: string;
  url: string;
  at: number;
};

export const playbackEvents: PlaybackEvent[] = [];

let current: HTMLAudioElement | null = null;

export function playCue(cardId: string, url: string | null): boolean {
  if (!url) return false;
  if (current) {
    try {
      current.pause();
    } catch {
      // already stopped
    }
    current = null;
  }
  playbackEvents.push({ cardId, url, at: Date.now() });
  const element = new Audio(url);
  current = element;
  const played = element.play();
  if (played && typeof played.catch === "function") {
    played.catch(() => {
      // autoplay refusal or missing backend; the event is still logged
    });
  }
  return true;
}

export function playSequence(items: { cardId: string; url: string | null }[]): number {
  let cued = 0;
  for (const item of items) {
    if (playCue(item.cardId, item.url)) cued += 1;
  }
  return cued;
}

export function clearPlaybackLog(): void {
  playbackEvents.length = 0;
}
