using System;

namespace ShopDemo.Data.Entities
{
    public class Order
    {
        public int Id { get; set; }
        public string Customer { get; set; }
        public decimal Total { get; set; }
        public int ItemCount { get; set; }
    }
}
