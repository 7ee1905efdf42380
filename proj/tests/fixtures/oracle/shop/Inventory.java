package shop;

import java.util.Comparator;
import java.util.HashMap;
import java.util.Map;

public class Inventory {
    private final Map<String, Slot> slots = new HashMap<>();
    private int version;

    static class Slot {
        int qty;
        Book book;

        boolean empty() {
            return qty == 0;
        }
    }

    enum Kind {
        PAPER, DIGITAL;

        boolean physical() {
            return this == PAPER;
        }
    }

    class Auditor {
        int audit() {
            version++;
            return slots.size() + version;
        }
    }

    Comparator<Slot> byQty() {
        return new Comparator<Slot>() {
            @Override
            public int compare(Slot a, Slot b) {
                return Integer.compare(a.qty, b.qty);
            }
        };
    }

    void restock(String key, Book book) {
        Slot s = slots.get(key);
        if (s == null) {
            s = new Slot();
            slots.put(key, s);
        }
        s.qty += 1;
        s.book = book;
        version++;
    }
}
